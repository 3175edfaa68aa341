"""Quaternion scalars, dense quaternion matrices and their complex adjoints.

A quaternion matrix ``A = A0 + A1 i + A2 j + A3 k`` is stored as the pair of
complex matrices ``Z1 = A0 + A1 i`` and ``Z2 = A2 + A3 i`` so that
``A = Z1 + Z2 j``.  Products, ranks and Moore-Penrose inverses are all
computed through the complex adjoint

    chi(A) = [[Z1, Z2], [-conj(Z2), conj(Z1)]]

which is an injective ring homomorphism from m x n quaternion matrices into
2m x 2n complex matrices.
"""
from dataclasses import dataclass
import numbers

import numpy as np

from .errors import AdjointStructureError, ShapeError, ToleranceError

__all__ = [
    "Quaternion",
    "QuatMatrix",
    "ComplexAdjoint",
    "Tolerances",
    "DEFAULT_TOL",
    "qmul",
    "conj_transpose",
    "to_adjoint",
    "from_adjoint",
    "rank",
    "complex_rank",
    "pinv",
    "proj_L",
    "proj_R",
    "block",
    "hstack",
    "vstack",
    "scale_of",
]


@dataclass(frozen=True)
class Quaternion:
    """A real quaternion ``a0 + a1 i + a2 j + a3 k``."""

    a0: float = 0.0
    a1: float = 0.0
    a2: float = 0.0
    a3: float = 0.0

    def __iter__(self):
        return iter((self.a0, self.a1, self.a2, self.a3))

    def __add__(self, other):
        other = _as_quaternion(other)
        return Quaternion(*(x + y for x, y in zip(self, other)))

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(-self.a0, -self.a1, -self.a2, -self.a3)

    def __sub__(self, other):
        return self + (-_as_quaternion(other))

    def __rsub__(self, other):
        return _as_quaternion(other) - self

    def __mul__(self, other):
        return qmul(self, _as_quaternion(other))

    def __rmul__(self, other):
        return qmul(_as_quaternion(other), self)

    def conj(self):
        return Quaternion(self.a0, -self.a1, -self.a2, -self.a3)

    def norm2(self):
        return self.a0**2 + self.a1**2 + self.a2**2 + self.a3**2

    def __abs__(self):
        return float(np.sqrt(self.norm2()))

    def inverse(self):
        n2 = self.norm2()
        if n2 == 0:
            raise ZeroDivisionError("quaternion inverse of zero")
        c = self.conj()
        return Quaternion(c.a0 / n2, c.a1 / n2, c.a2 / n2, c.a3 / n2)

    def __str__(self):
        return _format_quaternion(tuple(self))


def _as_quaternion(x):
    if isinstance(x, Quaternion):
        return x
    if isinstance(x, numbers.Real):
        return Quaternion(float(x))
    if isinstance(x, numbers.Complex):
        return Quaternion(float(x.real), float(x.imag))
    try:
        parts = tuple(float(v) for v in x)
    except TypeError:
        raise TypeError(f"cannot interpret {x!r} as a quaternion") from None
    if len(parts) != 4:
        raise ValueError(f"a quaternion needs 4 components, got {len(parts)}")
    return Quaternion(*parts)


def qmul(p, q):
    """Hamilton product ``p * q``."""
    a0, a1, a2, a3 = p
    b0, b1, b2, b3 = q
    return Quaternion(
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


def _format_quaternion(parts):
    terms = []
    for value, unit in zip(parts, ("", "i", "j", "k")):
        if value == 0:
            continue
        v = int(value) if float(value).is_integer() else value
        if unit and abs(v) == 1:
            body = unit
        else:
            body = f"{abs(v)}{unit}"
        sign = "-" if v < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f"{sign}{body}"
    return out


class QuatMatrix:
    """Immutable dense matrix over the real quaternions.

    Parameters
    ----------
    data
        Either an array of shape ``(m, n, 4)`` holding the real components
        ``a0, a1, a2, a3`` of every entry, a nested list of entries (numbers,
        4-sequences or :class:`Quaternion`), or another :class:`QuatMatrix`.
    """

    __slots__ = ("_z1", "_z2")
    __array_priority__ = 100  # keep numpy from hijacking the binary operators

    def __init__(self, data):
        if isinstance(data, QuatMatrix):
            z1, z2 = data._z1, data._z2
        else:
            comps = _components_from(data)
            z1 = comps[..., 0] + 1j * comps[..., 1]
            z2 = comps[..., 2] + 1j * comps[..., 3]
        self._set(z1, z2)

    def _set(self, z1, z2):
        z1 = np.array(z1, dtype=np.complex128)
        z2 = np.array(z2, dtype=np.complex128)
        if z1.ndim != 2 or z1.shape != z2.shape:
            raise ShapeError(f"bad complex parts {z1.shape} / {z2.shape}")
        z1.flags.writeable = False
        z2.flags.writeable = False
        self._z1 = z1
        self._z2 = z2

    @classmethod
    def from_complex(cls, z1, z2=None):
        """Build ``Z1 + Z2 j`` from two complex matrices."""
        z1 = np.atleast_2d(np.asarray(z1, dtype=np.complex128))
        if z2 is None:
            z2 = np.zeros_like(z1)
        out = cls.__new__(cls)
        out._set(z1, z2)
        return out

    @classmethod
    def _fresh(cls, z1, z2):
        # internal: adopt freshly computed complex128 arrays without copying
        z1.flags.writeable = False
        z2.flags.writeable = False
        out = cls.__new__(cls)
        out._z1 = z1
        out._z2 = z2
        return out

    @classmethod
    def zeros(cls, rows, cols):
        z = np.zeros((rows, cols), dtype=np.complex128)
        return cls.from_complex(z, z)

    @classmethod
    def eye(cls, n):
        return cls.from_complex(np.eye(n, dtype=np.complex128))

    @classmethod
    def from_components(cls, comps):
        comps = np.asarray(comps, dtype=float)
        if comps.ndim != 3 or comps.shape[2] != 4:
            raise ShapeError(f"components must have shape (m, n, 4), got {comps.shape}")
        return cls(comps)

    # -- basic properties -------------------------------------------------
    @property
    def shape(self):
        return self._z1.shape

    @property
    def rows(self):
        return self._z1.shape[0]

    @property
    def cols(self):
        return self._z1.shape[1]

    @property
    def size(self):
        return self._z1.size

    @property
    def complex_parts(self):
        """The read-only pair ``(Z1, Z2)`` with ``A = Z1 + Z2 j``."""
        return self._z1, self._z2

    @property
    def components(self):
        """Real components as a fresh ``(m, n, 4)`` float array."""
        return np.stack(
            [self._z1.real, self._z1.imag, self._z2.real, self._z2.imag], axis=-1
        )

    def entries(self):
        """Row-major list of :class:`Quaternion` entries."""
        comps = self.components.reshape(-1, 4)
        return [Quaternion(*map(float, c)) for c in comps]

    def __getitem__(self, key):
        if isinstance(key, tuple) and len(key) == 2 and all(
            isinstance(k, numbers.Integral) for k in key
        ):
            i, j = key
            z1 = self._z1[i, j]
            z2 = self._z2[i, j]
            return Quaternion(z1.real, z1.imag, z2.real, z2.imag)
        if not isinstance(key, tuple):
            key = (key, slice(None))
        rk, ck = key
        if isinstance(rk, numbers.Integral):
            rk = slice(rk, rk + 1 if rk != -1 else None)
        if isinstance(ck, numbers.Integral):
            ck = slice(ck, ck + 1 if ck != -1 else None)
        return QuatMatrix.from_complex(self._z1[rk, ck], self._z2[rk, ck])

    # -- arithmetic -------------------------------------------------------
    def _check_same(self, other, op):
        if not isinstance(other, QuatMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ShapeError(f"cannot {op} {self.shape} and {other.shape}")
        return other

    def __add__(self, other):
        if self._check_same(other, "add") is NotImplemented:
            return NotImplemented
        return QuatMatrix._fresh(self._z1 + other._z1, self._z2 + other._z2)

    def __sub__(self, other):
        if self._check_same(other, "subtract") is NotImplemented:
            return NotImplemented
        return QuatMatrix._fresh(self._z1 - other._z1, self._z2 - other._z2)

    def __neg__(self):
        return QuatMatrix._fresh(-self._z1, -self._z2)

    def __pos__(self):
        return self

    def __mul__(self, other):
        # right scalar multiplication A * q
        if isinstance(other, numbers.Real):
            return QuatMatrix.from_complex(self._z1 * other, self._z2 * other)
        if isinstance(other, Quaternion):
            return self @ QuatMatrix([[other]]).kron_identity(self.cols)
        return NotImplemented

    def __rmul__(self, other):
        # left scalar multiplication q * A
        if isinstance(other, numbers.Real):
            return QuatMatrix.from_complex(self._z1 * other, self._z2 * other)
        if isinstance(other, Quaternion):
            return QuatMatrix([[other]]).kron_identity(self.rows) @ self
        return NotImplemented

    def kron_identity(self, n):
        """``q I_n`` for a 1 x 1 matrix ``q``."""
        if self.shape != (1, 1):
            raise ShapeError("kron_identity needs a 1 x 1 matrix")
        eye = np.eye(n, dtype=np.complex128)
        return QuatMatrix.from_complex(self._z1[0, 0] * eye, self._z2[0, 0] * eye)

    def __matmul__(self, other):
        if not isinstance(other, QuatMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        a1, a2 = self._z1, self._z2
        b1, b2 = other._z1, other._z2
        # (A1 + A2 j)(B1 + B2 j) = (A1 B1 - A2 conj(B2)) + (A1 B2 + A2 conj(B1)) j
        z1 = a1 @ b1 - a2 @ b2.conj()
        z2 = a1 @ b2 + a2 @ b1.conj()
        return QuatMatrix._fresh(z1, z2)

    @property
    def H(self):
        """Conjugate transpose."""
        return QuatMatrix.from_complex(self._z1.conj().T, -self._z2.T)

    def conj_transpose(self):
        return self.H

    def norm(self):
        """Frobenius norm."""
        return float(np.sqrt(np.vdot(self._z1, self._z1).real + np.vdot(self._z2, self._z2).real))

    def max_abs(self):
        if self.size == 0:
            return 0.0
        return float(np.max(np.sqrt(np.abs(self._z1) ** 2 + np.abs(self._z2) ** 2)))

    def allclose(self, other, atol=1e-10):
        return self.shape == other.shape and (self - other).norm() <= atol

    def is_zero(self):
        return not (np.any(self._z1) or np.any(self._z2))

    def __eq__(self, other):
        if not isinstance(other, QuatMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and np.array_equal(self._z1, other._z1)
            and np.array_equal(self._z2, other._z2)
        )

    __hash__ = None

    def __repr__(self):
        rows = []
        for i in range(self.rows):
            rows.append("[" + ", ".join(str(self[i, j]) for j in range(self.cols)) + "]")
        return f"QuatMatrix({self.rows}x{self.cols}; " + "; ".join(rows) + ")"


def _components_from(data):
    arr = np.asarray(data, dtype=object) if not isinstance(data, np.ndarray) else data
    if isinstance(arr, np.ndarray) and arr.dtype != object:
        arr = np.asarray(arr, dtype=float)
        if arr.ndim == 3 and arr.shape[2] == 4:
            return arr
        if arr.ndim == 2:
            out = np.zeros(arr.shape + (4,))
            out[..., 0] = arr
            return out
        raise ShapeError(f"cannot build a quaternion matrix from shape {arr.shape}")
    rows = list(data)
    if not rows:
        return np.zeros((0, 0, 4))
    out = []
    width = None
    for r in rows:
        entries = [tuple(_as_quaternion(x)) for x in r]
        if width is None:
            width = len(entries)
        elif len(entries) != width:
            raise ShapeError("ragged rows in quaternion matrix literal")
        out.append(entries)
    return np.asarray(out, dtype=float).reshape(len(out), width, 4)


def conj_transpose(A):
    return A.H


# -- complex adjoint -------------------------------------------------------

@dataclass(frozen=True)
class ComplexAdjoint:
    """The 2m x 2n complex image of an m x n quaternion matrix."""

    m: int
    n: int
    data: np.ndarray

    @property
    def matrix(self):
        return self.data


def to_adjoint(A):
    z1, z2 = A.complex_parts
    m, n = z1.shape
    data = np.empty((2 * m, 2 * n), dtype=np.complex128)
    data[:m, :n] = z1
    data[:m, n:] = z2
    data[m:, :n] = -z2.conj()
    data[m:, n:] = z1.conj()
    data.flags.writeable = False
    return ComplexAdjoint(A.rows, A.cols, data)


def from_adjoint(X, tol=None):
    """Recover the quaternion matrix whose adjoint is ``X``.

    Raises :class:`AdjointStructureError` when the lower blocks disagree with
    the upper blocks by more than ``tol * (1 + ||X||)``.
    """
    data = X.data if isinstance(X, ComplexAdjoint) else np.asarray(X, dtype=np.complex128)
    if data.shape[0] % 2 or data.shape[1] % 2:
        raise AdjointStructureError(f"odd adjoint shape {data.shape}")
    m, n = data.shape[0] // 2, data.shape[1] // 2
    z1 = data[:m, :n]
    z2 = data[:m, n:]
    tol = DEFAULT_TOL.cond_tol if tol is None else tol
    if data.size:
        mismatch = np.linalg.norm(data[m:, :n] + z2.conj()) + np.linalg.norm(
            data[m:, n:] - z1.conj()
        )
        if mismatch > tol * (1.0 + np.linalg.norm(data)):
            raise AdjointStructureError(
                f"matrix is not block-structured (mismatch {mismatch:.3e})"
            )
    return QuatMatrix.from_complex(z1, z2)


def _nearest_from_adjoint(data):
    """Quaternion matrix whose adjoint is closest to ``data`` in Frobenius norm."""
    m, n = data.shape[0] // 2, data.shape[1] // 2
    z1 = 0.5 * (data[:m, :n] + data[m:, n:].conj())
    z2 = 0.5 * (data[:m, n:] - data[m:, :n].conj())
    return QuatMatrix._fresh(z1, z2)


# -- tolerances, rank, pseudoinverse ----------------------------------------

@dataclass(frozen=True)
class Tolerances:
    """Numerical policy for ranks, consistency tests and residual checks.

    ``rank_rtol`` is the relative singular-value cutoff; ``None`` means
    ``max(2m, 2n) * eps`` for a 2m x 2n adjoint.  ``rank_atol`` is an
    absolute floor under the cutoff.
    """

    rank_rtol: float = None
    rank_atol: float = 0.0
    cond_tol: float = 1e-9
    verify_tol: float = 1e-8

    def __post_init__(self):
        for name in ("cond_tol", "verify_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.rank_rtol is not None and not self.rank_rtol > 0:
            raise ValueError("rank_rtol must be positive")
        if self.rank_atol < 0:
            raise ValueError("rank_atol must be nonnegative")

    def cutoff(self, sigma_max, shape):
        rtol = self.rank_rtol
        if rtol is None:
            rtol = max(shape) * np.finfo(float).eps
        return max(rtol * sigma_max, self.rank_atol)

    def with_atol(self, atol):
        return Tolerances(self.rank_rtol, atol, self.cond_tol, self.verify_tol)


DEFAULT_TOL = Tolerances()


def complex_rank(A, tol=DEFAULT_TOL):
    """Numerical rank of the complex adjoint of ``A``."""
    if A.size == 0:
        return 0
    chi = to_adjoint(A).data
    s = np.linalg.svd(chi, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.count_nonzero(s > tol.cutoff(s[0], chi.shape)))


def rank(A, tol=DEFAULT_TOL):
    """Rank of a quaternion matrix: half the rank of its complex adjoint."""
    r = complex_rank(A, tol)
    if r % 2:
        raise ToleranceError(
            f"odd complex rank {r} for a {A.rows}x{A.cols} quaternion matrix; "
            "adjust rank_rtol"
        )
    return r // 2


def pinv(A, tol=DEFAULT_TOL):
    """Moore-Penrose inverse via the SVD of the complex adjoint.

    Singular values of an adjoint come in equal pairs; the cutoff is applied
    to each pair as a unit so the result keeps its block structure.
    """
    m, n = A.shape
    if A.size == 0:
        return QuatMatrix.zeros(n, m)
    chi = to_adjoint(A).data
    u, s, vh = np.linalg.svd(chi, full_matrices=False)
    if s[0] == 0:
        return QuatMatrix.zeros(n, m)
    cut = tol.cutoff(s[0], chi.shape)
    pair = s.copy()
    pair[0::2] = pair[1::2] = 0.5 * (s[0::2] + s[1::2])
    keep = pair > cut
    inv_s = np.zeros_like(s)
    inv_s[keep] = 1.0 / s[keep]
    x = (vh.conj().T * inv_s) @ u.conj().T
    # roundoff in x grows with 1/s_min; average the paired blocks rather than
    # reject a drift that is only conditioning
    return _nearest_from_adjoint(x)


def proj_L(A, tol=DEFAULT_TOL):
    """``L_A = I - A^+ A`` (cols(A) x cols(A))."""
    return QuatMatrix.eye(A.cols) - pinv(A, tol) @ A


def proj_R(A, tol=DEFAULT_TOL):
    """``R_A = I - A A^+`` (rows(A) x rows(A))."""
    return QuatMatrix.eye(A.rows) - A @ pinv(A, tol)


# -- block assembly ---------------------------------------------------------

def block(rows):
    """Assemble a block matrix; ``None`` or ``0`` entries are zero blocks.

    Block heights and widths are inferred from the non-zero entries in each
    block row and column.
    """
    grid = [list(r) for r in rows]
    if not grid:
        return QuatMatrix.zeros(0, 0)
    ncol = len(grid[0])
    if any(len(r) != ncol for r in grid):
        raise ShapeError("ragged block layout")
    heights = [None] * len(grid)
    widths = [None] * ncol
    for i, r in enumerate(grid):
        for j, b in enumerate(r):
            if isinstance(b, QuatMatrix):
                if heights[i] is None:
                    heights[i] = b.rows
                elif heights[i] != b.rows:
                    raise ShapeError(f"block row {i} has inconsistent heights")
                if widths[j] is None:
                    widths[j] = b.cols
                elif widths[j] != b.cols:
                    raise ShapeError(f"block column {j} has inconsistent widths")
            elif not (b is None or (isinstance(b, numbers.Number) and b == 0)):
                raise TypeError(f"unsupported block entry {b!r}")
    if None in heights or None in widths:
        raise ShapeError("cannot infer the size of an all-zero block row or column")
    z1_rows, z2_rows = [], []
    for i, r in enumerate(grid):
        r1, r2 = [], []
        for j, b in enumerate(r):
            if isinstance(b, QuatMatrix):
                b1, b2 = b.complex_parts
            else:
                b1 = b2 = np.zeros((heights[i], widths[j]), dtype=np.complex128)
            r1.append(b1)
            r2.append(b2)
        z1_rows.append(r1)
        z2_rows.append(r2)
    return QuatMatrix.from_complex(np.block(z1_rows), np.block(z2_rows))


def hstack(*mats):
    return block([list(mats)])


def vstack(*mats):
    return block([[m] for m in mats])


def scale_of(*mats):
    """``1 + max Frobenius norm`` over the given matrices (``None`` skipped)."""
    norms = [m.norm() for m in mats if m is not None]
    return 1.0 + (max(norms) if norms else 0.0)
