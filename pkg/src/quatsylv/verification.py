"""Residual reports, an independent consistency oracle, and golden fixtures.

The oracle never touches the complex adjoint.  It writes every quaternion
product through the real 4 x 4 left/right multiplication matrices, stacks all
unknowns into one real vector and decides consistency by the least-squares
residual of the resulting real linear system.
"""
import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .errors import CapExceeded, ShapeError
from .quaternion import DEFAULT_TOL, QuatMatrix
from .systems import EquationSystem, FourTermEquation, Solution, _unknowns

__all__ = [
    "ResidualReport",
    "OracleVerdict",
    "residual",
    "oracle_check",
    "ORACLE_CAP",
    "FIXTURE_IDS",
    "Fixture",
    "paper_fixture",
    "fixture_path",
    "fixture_checksums",
]

ORACLE_CAP = 20_000


# -- residuals ----------------------------------------------------------------

@dataclass(frozen=True)
class ResidualReport:
    """Per-equation Frobenius residuals of a candidate solution.

    ``relative`` divides each absolute residual by ``scale``
    (``1 + max coefficient norm``).
    """

    absolute: tuple
    scale: float

    @property
    def relative(self):
        return tuple(r / self.scale for r in self.absolute)

    @property
    def max_relative(self):
        return max(self.relative, default=0.0)

    def passes(self, tol=DEFAULT_TOL):
        return self.max_relative <= tol.verify_tol

    def lines(self):
        out = [
            f"eq{i}: |residual| = {a:.3e} (relative {r:.3e})"
            for i, (a, r) in enumerate(zip(self.absolute, self.relative), start=1)
        ]
        out.append(f"max relative residual = {self.max_relative:.3e}")
        return out

    def to_dict(self):
        return {
            "absolute": list(self.absolute),
            "relative": list(self.relative),
            "scale": self.scale,
            "max_relative": self.max_relative,
        }


def residual(sys, sol):
    """Residual report of ``sol`` (a :class:`Solution`, mapping or sequence).

    Raises
    ------
    ShapeError
        Missing unknowns or unknowns of the wrong shape.
    """
    X = _unknowns(sol)
    if isinstance(sys, FourTermEquation):
        for k, shape in sys.unknown_shapes.items():
            if k not in X or X[k].shape != shape:
                raise ShapeError(f"X{k} must have shape {shape}")
    elif not isinstance(sys, EquationSystem):
        raise TypeError(f"cannot compute residuals for {type(sys).__name__}")
    return ResidualReport(tuple(float(r) for r in sys.residuals(X)), float(sys.scale()))


# -- real-representation oracle ---------------------------------------------------

def _hamilton_tensor():
    # G[k, a, b] = coefficient of e_k in e_a * e_b for the basis 1, i, j, k
    table = {
        (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
        (1, 0): (1, 1), (1, 1): (0, -1), (1, 2): (3, 1), (1, 3): (2, -1),
        (2, 0): (2, 1), (2, 1): (3, -1), (2, 2): (0, -1), (2, 3): (1, 1),
        (3, 0): (3, 1), (3, 1): (2, 1), (3, 2): (1, -1), (3, 3): (0, -1),
    }
    G = np.zeros((4, 4, 4))
    for (a, b), (k, s) in table.items():
        G[k, a, b] = s
    return G


_G = _hamilton_tensor()


def left_matrices(A):
    """``L[i, j]`` with ``L[i, j] @ q == components(A[i, j] * q)``; shape (m, n, 4, 4)."""
    return np.einsum("kab,ija->ijkb", _G, A.components)


def right_matrices(B):
    """``R[i, j]`` with ``R[i, j] @ p == components(p * B[i, j])``; shape (m, n, 4, 4)."""
    return np.einsum("kab,ijb->ijka", _G, B.components)


def _term(A, B):
    """Real matrix of ``X -> A X B`` acting on row-major component vectors.

    ``A`` is ``m x p``, ``B`` is ``q x n``; the result is ``(4 m n) x (4 p q)``.
    """
    L, R = left_matrices(A), right_matrices(B)
    m, p = A.shape
    q, n = B.shape
    T = np.einsum("ilke,mjec->ijklmc", L, R)
    return T.reshape(4 * m * n, 4 * p * q)


def _components_vec(M):
    return M.components.reshape(-1)


@dataclass(frozen=True)
class OracleVerdict:
    """Least-squares verdict of the vectorized real system.

    ``relative_residual`` is ``||M x - c|| / scale`` at the least-squares
    minimizer; ``consistent`` iff it is at most ``cond_tol``.
    """

    consistent: bool
    relative_residual: float
    n_unknowns: int
    solution: dict = field(default=None, repr=False, compare=False)

    def __bool__(self):
        return self.consistent


def _assemble(sys):
    shapes = sys.unknown_shapes
    offsets, total = {}, 0
    for k, (r, c) in shapes.items():
        offsets[k] = total
        total += 4 * r * c
    blocks, rhs = [], []
    for i in range(1, sys.n_equations + 1):
        A, B, C, left, right = sys.equation(i)
        rows = 4 * C.size
        M = np.zeros((rows, total))
        if rows:
            # A X_left - X_right B
            lo = offsets[left]
            M[:, lo:lo + 4 * A.cols * C.cols] += _term(A, QuatMatrix.eye(C.cols))
            lo = offsets[right]
            M[:, lo:lo + 4 * C.rows * B.rows] -= _term(QuatMatrix.eye(C.rows), B)
        blocks.append(M)
        rhs.append(_components_vec(C))
    M = np.vstack(blocks) if blocks else np.zeros((0, total))
    return M, np.concatenate(rhs) if rhs else np.zeros(0), offsets


def oracle_unknowns(sys):
    """Number of real unknowns in the vectorized system."""
    return sum(4 * r * c for r, c in sys.unknown_shapes.values())


def oracle_check(sys, tol=DEFAULT_TOL, cap=ORACLE_CAP):
    """Decide consistency of ``sys`` by real least squares.

    Parameters
    ----------
    sys : EquationSystem
    tol : Tolerances
        ``cond_tol`` bounds the relative least-squares residual.
    cap : int
        Maximum number of real unknowns.

    Raises
    ------
    CapExceeded
        If the vectorized system has more than ``cap`` real unknowns.
    """
    n = oracle_unknowns(sys)
    if n > cap:
        raise CapExceeded(f"{n} real unknowns exceed the oracle cap of {cap}")
    M, c, offsets = _assemble(sys)
    if M.size:
        x, *_ = np.linalg.lstsq(M, c, rcond=None)
    else:
        x = np.zeros(M.shape[1])
    rel = float(np.linalg.norm(M @ x - c)) / sys.scale()
    X = {}
    for k, (r, cc) in sys.unknown_shapes.items():
        lo = offsets[k]
        X[k] = QuatMatrix(x[lo:lo + 4 * r * cc].reshape(r, cc, 4))
    return OracleVerdict(rel <= tol.cond_tol, rel, n, X)


# -- golden fixtures ------------------------------------------------------------

FIXTURE_IDS = ("ex31", "ex41", "ex51", "ex61", "ex71")


@dataclass(frozen=True)
class Fixture:
    """A worked example: system, printed solution and printed rank values.

    ``printed_ranks`` maps condition ids to the ``(lhs, rhs)`` values as
    printed; a value of ``None`` means only one side is printed.
    ``errata`` maps condition ids to the printed value that the data does
    not reproduce.
    """

    id: str
    system: EquationSystem
    solution: Solution
    printed_ranks: dict
    errata: dict


def fixture_path(name=""):
    """Filesystem path of the packaged fixture directory (or an entry in it)."""
    return resources.files("quatsylv") / "fixtures" / name


def paper_fixture(id):
    """Load one of :data:`FIXTURE_IDS`.

    Returns
    -------
    Fixture
    """
    from .qio import read_qmat, read_qsys

    if id not in FIXTURE_IDS:
        raise KeyError(f"unknown fixture {id!r}; expected one of {FIXTURE_IDS}")
    sys = read_qsys(fixture_path(f"{id}.qsys"))
    sol_dir = fixture_path(id)
    X = {k: read_qmat(sol_dir / f"X{k}.qmat") for k in sys.unknown_shapes}
    meta = json.loads(fixture_path("ranks.json").read_text(encoding="utf-8"))[id]
    ranks = {cid: tuple(v) for cid, v in meta["ranks"].items()}
    sol = Solution(X, residuals=sys.residuals(X), scale=sys.scale())
    return Fixture(id, sys, sol, ranks, dict(meta.get("errata", {})))


def fixture_checksums():
    """SHA-256 of every fixture file, keyed by its path relative to the fixture dir."""
    root = fixture_path()
    out = {}
    for id in FIXTURE_IDS:
        names = [f"{id}.qsys"] + [f"{id}/X{k}.qmat" for k in range(1, 6)]
        for name in names:
            out[name] = hashlib.sha256((root / name).read_bytes()).hexdigest()
    out["ranks.json"] = hashlib.sha256((root / "ranks.json").read_bytes()).hexdigest()
    return out
