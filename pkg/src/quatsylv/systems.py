"""Containers for systems of one-sided Sylvester-type equations.

Every system handled here is a list of equations

    A_i X_l - X_r B_i = C_i

where ``(l, r)`` is fixed by the system kind.  The kind tables below are the
single source of truth for which unknown sits where.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import ShapeError
from .quaternion import QuatMatrix, scale_of

__all__ = [
    "PATTERNS",
    "PAIR_KINDS",
    "COUPLED_KINDS",
    "SPECIAL_KINDS",
    "EquationSystem",
    "PairSystem",
    "CoupledSystem",
    "FourTermEquation",
    "FreeParameters",
    "Solution",
]

# (left unknown, right unknown) per equation: A_i X_left - X_right B_i = C_i
PATTERNS = {
    "common_right": ((1, 2), (3, 2)),
    "chain": ((1, 2), (2, 3)),
    "common_left": ((1, 2), (1, 3)),
    "sys01": ((1, 2), (3, 2), (3, 4), (4, 5)),
    "sys02": ((1, 2), (2, 3), (3, 4), (5, 4)),
    "sys03": ((1, 2), (2, 3), (4, 3), (5, 4)),
    "sys04": ((1, 2), (2, 3), (3, 4), (4, 5)),
    "sys05": ((1, 2), (3, 2), (4, 3), (4, 5)),
    "special01": ((1, 2), (3, 2), (3, 4)),
    "special02": ((1, 2), (2, 3), (3, 4)),
    "special03": ((1, 2), (2, 3), (4, 3)),
}
PAIR_KINDS = ("common_right", "chain", "common_left")
COUPLED_KINDS = ("sys01", "sys02", "sys03", "sys04", "sys05")
SPECIAL_KINDS = ("special01", "special02", "special03")

# the four-equation system whose first three equations form each special kind
SPECIAL_PARENT = {"special01": "sys01", "special02": "sys02", "special03": "sys03"}


class EquationSystem:
    """A tagged set of coefficients ``A_i, B_i, C_i``.

    Conformability is checked at construction; the unknown shapes are
    inferred from the coefficients and exposed as :attr:`unknown_shapes`.
    """

    kinds = tuple(PATTERNS)

    def __init__(self, kind, **coeffs):
        if kind not in self.kinds:
            raise ValueError(f"unknown kind {kind!r} for {type(self).__name__}")
        self.kind = kind
        self.pattern = PATTERNS[kind]
        need = {f"{c}{i}" for i in range(1, len(self.pattern) + 1) for c in "ABC"}
        missing = need - coeffs.keys()
        extra = coeffs.keys() - need
        if missing:
            raise ShapeError(f"{kind}: missing coefficients {sorted(missing)}")
        if extra:
            raise ShapeError(f"{kind}: unexpected coefficients {sorted(extra)}")
        self.coeffs = {k: _as_matrix(v, k) for k, v in coeffs.items()}
        self._scale = None
        self.unknown_shapes = self._infer_shapes()

    def __getattr__(self, name):
        coeffs = self.__dict__.get("coeffs")
        if coeffs is not None and name in coeffs:
            return coeffs[name]
        raise AttributeError(name)

    def __getitem__(self, name):
        return self.coeffs[name]

    @property
    def n_equations(self):
        return len(self.pattern)

    @property
    def n_unknowns(self):
        return max(max(p) for p in self.pattern)

    def equation(self, i):
        """Coefficients and unknown indices of the 1-based equation ``i``."""
        left, right = self.pattern[i - 1]
        c = self.coeffs
        return c[f"A{i}"], c[f"B{i}"], c[f"C{i}"], left, right

    def _infer_shapes(self):
        shapes = {}

        def put(k, shape, why):
            if k in shapes and shapes[k] != shape:
                raise ShapeError(
                    f"{self.kind}: X{k} must be {shapes[k]} but {why} needs {shape}"
                )
            shapes[k] = shape

        for i in range(1, self.n_equations + 1):
            A, B, C, left, right = self.equation(i)
            if A.rows != C.rows:
                raise ShapeError(f"{self.kind}: rows(A{i})={A.rows} != rows(C{i})={C.rows}")
            if B.cols != C.cols:
                raise ShapeError(f"{self.kind}: cols(B{i})={B.cols} != cols(C{i})={C.cols}")
            put(left, (A.cols, C.cols), f"A{i} X{left}")
            put(right, (C.rows, B.rows), f"X{right} B{i}")
        return dict(sorted(shapes.items()))

    def scale(self):
        if self._scale is None:
            self._scale = scale_of(*self.coeffs.values())
        return self._scale

    def lhs(self, i, X):
        A, B, _, left, right = self.equation(i)
        return A @ X[left] - X[right] @ B

    def residuals(self, X):
        """Frobenius norms ``||A_i X_l - X_r B_i - C_i||`` per equation."""
        X = _unknowns(X)
        for k, shape in self.unknown_shapes.items():
            if k not in X:
                raise ShapeError(f"solution is missing X{k}")
            if X[k].shape != shape:
                raise ShapeError(f"X{k} has shape {X[k].shape}, expected {shape}")
        return [
            (self.lhs(i, X) - self.coeffs[f"C{i}"]).norm()
            for i in range(1, self.n_equations + 1)
        ]

    def replace(self, **coeffs):
        new = dict(self.coeffs)
        new.update(coeffs)
        return type(self)(self.kind, **new)

    def __repr__(self):
        dims = ", ".join(f"X{k}:{r}x{c}" for k, (r, c) in self.unknown_shapes.items())
        return f"{type(self).__name__}({self.kind}; {dims})"


class PairSystem(EquationSystem):
    """Two coupled equations sharing one unknown."""

    kinds = PAIR_KINDS


class CoupledSystem(EquationSystem):
    """One of the four-equation systems or their three-equation special cases."""

    kinds = COUPLED_KINDS + SPECIAL_KINDS

    @property
    def is_special(self):
        return self.kind in SPECIAL_KINDS


@dataclass(frozen=True)
class FourTermEquation:
    """``A1 X1 + X2 B1 + C3 X3 D3 + C4 X4 D4 = E1``."""

    A1: QuatMatrix
    B1: QuatMatrix
    C3: QuatMatrix
    D3: QuatMatrix
    C4: QuatMatrix
    D4: QuatMatrix
    E1: QuatMatrix

    def __post_init__(self):
        m, n = self.E1.shape
        if self.A1.rows != m or self.C3.rows != m or self.C4.rows != m:
            raise ShapeError("A1, C3, C4 must have as many rows as E1")
        if self.B1.cols != n or self.D3.cols != n or self.D4.cols != n:
            raise ShapeError("B1, D3, D4 must have as many columns as E1")

    @property
    def unknown_shapes(self):
        m, n = self.E1.shape
        return {
            1: (self.A1.cols, n),
            2: (m, self.B1.rows),
            3: (self.C3.cols, self.D3.rows),
            4: (self.C4.cols, self.D4.rows),
        }

    def lhs(self, X):
        X = _unknowns(X)
        return (
            self.A1 @ X[1]
            + X[2] @ self.B1
            + self.C3 @ X[3] @ self.D3
            + self.C4 @ X[4] @ self.D4
        )

    def residuals(self, X):
        return [(self.lhs(X) - self.E1).norm()]

    def scale(self):
        return scale_of(self.A1, self.B1, self.C3, self.D3, self.C4, self.D4, self.E1)


class FreeParameters:
    """Named free-parameter matrices; absent names stand for zero.

    Shapes are validated against a shape table (see ``shape_query``) when the
    parameters are consumed by a solver.
    """

    def __init__(self, values=None, **kw):
        vals = dict(values or {})
        vals.update(kw)
        self.values = {k: _as_matrix(v, k) for k, v in vals.items()}

    def __contains__(self, name):
        return name in self.values

    def names(self):
        return sorted(self.values)

    def resolve(self, shapes):
        """Return a full ``name -> matrix`` map for ``shapes``, zero-filled."""
        unknown = set(self.values) - set(shapes)
        if unknown:
            raise ShapeError(f"unknown free parameters {sorted(unknown)}")
        out = {}
        for name, shape in shapes.items():
            v = self.values.get(name)
            if v is None:
                v = QuatMatrix.zeros(*shape)
            elif v.shape != tuple(shape):
                raise ShapeError(f"free parameter {name} has shape {v.shape}, expected {shape}")
            out[name] = v
        return out

    @classmethod
    def random(cls, shapes, rng, low=-2, high=2):
        """Integer-component draws, one matrix per name in ``shapes``."""
        if not isinstance(rng, np.random.Generator):
            rng = np.random.default_rng(rng)
        return cls({
            name: QuatMatrix(rng.integers(low, high + 1, size=(r, c, 4)).astype(float))
            for name, (r, c) in shapes.items()
        })

    def __repr__(self):
        return f"FreeParameters({', '.join(self.names())})"


@dataclass
class Solution:
    """Unknowns ``X1...`` plus the free parameters that produced them."""

    X: dict
    params: dict = field(default_factory=dict)
    X3_alternate: QuatMatrix = None
    residuals: list = None
    scale: float = None

    def __getitem__(self, k):
        return self.X[k]

    @property
    def max_relative_residual(self):
        if not self.residuals:
            return 0.0
        return max(self.residuals) / self.scale


def _unknowns(X):
    if isinstance(X, Solution):
        return X.X
    if isinstance(X, (list, tuple)):
        return {i + 1: x for i, x in enumerate(X)}
    return {int(str(k).lstrip("X")): v for k, v in X.items()}


def _as_matrix(v, name):
    if isinstance(v, QuatMatrix):
        return v
    try:
        return QuatMatrix(v)
    except Exception as exc:
        raise ShapeError(f"{name}: {exc}") from exc
