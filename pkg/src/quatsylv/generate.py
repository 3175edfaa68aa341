"""Seeded random instances with a planted solution."""
import numpy as np

from .quaternion import QuatMatrix
from .systems import PATTERNS, CoupledSystem, PairSystem, Solution

__all__ = ["generate", "perturb", "random_quat", "low_rank"]


def random_quat(rng, rows, cols, low=-2, high=2):
    """Matrix with integer components drawn uniformly from ``[low, high]``."""
    return QuatMatrix(rng.integers(low, high + 1, size=(rows, cols, 4)).astype(float))


def _nonzero_components(rng, rows, cols):
    # components in {-2, -1, 1, 2}
    v = rng.integers(1, 3, size=(rows, cols, 4)) * rng.choice((-1, 1), size=(rows, cols, 4))
    return QuatMatrix(v.astype(float))


def low_rank(rng, rows, cols, rank):
    """Integer-component ``rows x cols`` matrix of the given rank (generically)."""
    if rank <= 0 or rows == 0 or cols == 0:
        return QuatMatrix.zeros(rows, cols)
    return _nonzero_components(rng, rows, rank) @ _nonzero_components(rng, rank, cols)


def _unknown_shapes(kind, size):
    n = max(max(p) for p in PATTERNS[kind])
    if isinstance(size, int):
        return {k: (size, size) for k in range(1, n + 1)}
    shapes = {int(str(k).lstrip("X")): tuple(v) for k, v in dict(size).items()}
    if set(shapes) != set(range(1, n + 1)):
        raise ValueError(f"{kind} needs shapes for X1..X{n}")
    return shapes


def generate(kind, size, seed, deficit=1):
    """Consistent system of ``kind`` built around a planted solution.

    Parameters
    ----------
    kind : str
        Any system kind, including the pair kinds.
    size : int or mapping
        Either a common square size for every unknown, or a map from unknown
        index to ``(rows, cols)``.
    seed : int or numpy.random.Generator
    deficit : int
        Each coefficient ``A_i``/``B_i`` has rank ``min(rows, cols) - deficit``
        so that right-hand-side perturbations are detectable.

    Returns
    -------
    (system, Solution)
        ``Solution.X`` holds the planted unknowns with small integer entries.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    shapes = _unknown_shapes(kind, size)
    X = {k: random_quat(rng, *shapes[k]) for k in sorted(shapes)}
    coeffs = {}
    for i, (left, right) in enumerate(PATTERNS[kind], start=1):
        m = shapes[right][0]
        A = low_rank(rng, m, shapes[left][0], min(m, shapes[left][0]) - deficit)
        n = shapes[left][1]
        B = low_rank(rng, shapes[right][1], n, min(shapes[right][1], n) - deficit)
        coeffs[f"A{i}"] = A
        coeffs[f"B{i}"] = B
        coeffs[f"C{i}"] = A @ X[left] - X[right] @ B
    cls = PairSystem if kind in PairSystem.kinds else CoupledSystem
    sys = cls(kind, **coeffs)
    return sys, Solution(X, residuals=sys.residuals(X), scale=sys.scale())


def perturb(sys, seed):
    """Add a random nonzero quaternion to one entry of one ``C_i``."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    candidates = [i for i in range(1, sys.n_equations + 1) if sys[f"C{i}"].size]
    i = int(rng.choice(candidates))
    C = sys[f"C{i}"]
    r, c = int(rng.integers(C.rows)), int(rng.integers(C.cols))
    comps = C.components.copy()
    bump = rng.integers(-2, 3, size=4).astype(float)
    if not bump.any():
        bump[0] = 1.0
    comps[r, c] += bump
    return sys.replace(**{f"C{i}": QuatMatrix(comps)})
