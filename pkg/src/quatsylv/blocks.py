"""Two-equation building blocks and the four-term equation.

These are the pieces the coupled-system solvers splice together:

* ``solve_single`` -- ``A X - Y B = C``;
* ``solve_pair`` / ``check_pair`` -- the pairs ``common_right``
  (``A1X1 - X2B1 = C1, A2X3 - X2B2 = C2``), ``chain``
  (``A1X1 - X2B1 = C1, A2X2 - X3B2 = C2``) and ``common_left``
  (``A1X1 - X2B1 = C1, A2X1 - X3B2 = C2``);
* ``solve_four_term`` -- ``A1X1 + X2B1 + C3X3D3 + C4X4D4 = E1``.

Free parameters keep the names used by the closed-form solutions (``W1..W6``
for pairs, ``T1..T8`` for the four-term equation); absent ones are zero.
"""
from .certificate import CertificateBuilder
from .errors import Inconsistent
from .quaternion import DEFAULT_TOL, QuatMatrix, block, hstack, pinv, rank, vstack
from .systems import FreeParameters, Solution

__all__ = [
    "Ops",
    "solve_single",
    "single_param_shapes",
    "check_pair",
    "pair_projector_products",
    "PAIR_PROJECTOR_LABELS",
    "pair_param_shapes",
    "pair_operators",
    "solve_pair",
    "four_term_operators",
    "four_term_param_shapes",
    "check_four_term",
    "solve_four_term",
    "rank_identity_check",
    "solver_tol",
]

# absolute singular-value floor for solver-internal pinvs, relative to the
# input scale: intermediates such as R_A B that vanish in exact arithmetic come
# out at roundoff level and must not be inverted.
SOLVER_ATOL = 1e-11


def solver_tol(tol, scale):
    if tol.rank_atol > 0:
        return tol
    return tol.with_atol(SOLVER_ATOL * scale)


class Ops:
    """Moore-Penrose inverse and projectors under one tolerance policy.

    Results are memoized per matrix object, so one ``Ops`` should live only
    as long as the computation that owns it.
    """

    def __init__(self, tol=DEFAULT_TOL):
        self.tol = tol
        self._memo = {}

    def _cached(self, tag, A, fn):
        key = (tag, id(A))
        hit = self._memo.get(key)
        if hit is None:
            # keep A alive so its id is not reused while cached
            hit = self._memo[key] = (A, fn(A))
        return hit[1]

    def P(self, A):
        return self._cached("P", A, lambda M: pinv(M, self.tol))

    def L(self, A):
        return self._cached("L", A, lambda M: QuatMatrix.eye(M.cols) - self.P(M) @ M)

    def R(self, A):
        return self._cached("R", A, lambda M: QuatMatrix.eye(M.rows) - M @ self.P(M))


def _free(free):
    if free is None:
        return FreeParameters()
    if isinstance(free, FreeParameters):
        return free
    return FreeParameters(free)


# -- A X - Y B = C --------------------------------------------------------

def single_param_shapes(A, B, C):
    """Shapes of ``U``, ``W``, ``V`` in the general solution of ``AX - YB = C``."""
    return {
        "U": (A.cols, B.rows),
        "W": (A.cols, C.cols),
        "V": (C.rows, B.rows),
    }


def solve_single(A, B, C, free=None, tol=DEFAULT_TOL):
    """General solution of ``A X - Y B = C``.

    ``X = A^+ C + U B + L_A W`` and ``Y = -R_A C B^+ + A U + V R_B``.  Raises
    :class:`Inconsistent` when ``R_A C L_B`` does not vanish.
    """
    from .quaternion import scale_of

    scale = scale_of(A, B, C)
    op = Ops(solver_tol(tol, scale))
    p = _free(free).resolve(single_param_shapes(A, B, C))
    RA, LB = op.R(A), op.L(B)
    if (RA @ C @ LB).norm() > tol.cond_tol * scale:
        raise Inconsistent("A X - Y B = C is not solvable: R_A C L_B != 0")
    Ap, Bp = op.P(A), op.P(B)
    X = Ap @ C + p["U"] @ B + op.L(A) @ p["W"]
    Y = -(RA @ C @ Bp) + A @ p["U"] + p["V"] @ op.R(B)
    return X, Y


# -- pairs ----------------------------------------------------------------

def pair_operators(sys, op):
    """Intermediate operators of the closed-form pair solutions."""
    A1, B1, C1 = sys.A1, sys.B1, sys.C1
    A2, B2, C2 = sys.A2, sys.B2, sys.C2
    if sys.kind == "common_right":
        D1 = op.R(B1) @ B2
        A = op.R(A2) @ A1
        LD1 = op.L(D1)
        B = B2 @ LD1
        C = op.R(A2) @ (op.R(A1) @ C1 @ op.P(B1) @ B2 - C2) @ LD1
        return {"D1": D1, "A": A, "B": B, "C": C}
    if sys.kind == "chain":
        A21 = A2 @ A1
        R21 = op.R(A21)
        A11 = R21 @ A2
        B11 = op.R(B1) @ op.L(B2)
        C11 = R21 @ (A2 @ op.R(A1) @ C1 @ op.P(B1) + C2) @ op.L(B2)
        return {"A2A1": A21, "A11": A11, "B11": B11, "C11": C11}
    if sys.kind == "common_left":
        F = A2 @ op.L(A1)
        RF = op.R(F)
        A11 = RF @ A2
        B11 = B1 @ op.L(B2)
        C11 = RF @ (C2 - A2 @ op.P(A1) @ C1) @ op.L(B2)
        return {"A2LA1": F, "A11": A11, "B11": B11, "C11": C11}
    raise ValueError(sys.kind)


def pair_param_shapes(sys):
    """Shapes of the free parameters ``W1..W6`` for a pair system."""
    A1, B1, A2, B2 = sys.A1, sys.B1, sys.A2, sys.B2
    X = sys.unknown_shapes
    U1 = (A1.cols, B1.rows)
    if sys.kind == "common_right":
        return {"W1": X[1], "W2": U1, "W3": U1, "W4": (A2.cols, B1.rows),
                "W5": X[2], "W6": X[3]}
    if sys.kind == "chain":
        return {"W1": X[1], "W2": X[2], "W3": X[2], "W4": (A1.cols, B2.rows),
                "W5": X[3], "W6": U1}
    if sys.kind == "common_left":
        return {"W1": (A1.cols, B2.rows), "W2": X[1], "W3": X[3], "W4": U1,
                "W5": U1, "W6": X[2]}
    raise ValueError(sys.kind)


PAIR_PROJECTOR_LABELS = {
    "common_right": ("R_A1 C1 L_B1", "R_A C", "C L_B"),
    "chain": ("R_A1 C1 L_B1", "R_A11 C11", "C11 L_B11"),
    "common_left": ("R_A1 C1 L_B1", "R_A11 C11", "C11 L_B11"),
}


def pair_projector_products(sys, op, ops=None):
    """Products whose vanishing certifies a pair system.

    The order matches :data:`PAIR_PROJECTOR_LABELS`.
    """
    o = ops or pair_operators(sys, op)
    out = [op.R(sys.A1) @ sys.C1 @ op.L(sys.B1)]
    if sys.kind == "common_right":
        A, B, C = o["A"], o["B"], o["C"]
    else:
        A, B, C = o["A11"], o["B11"], o["C11"]
    out.append(op.R(A) @ C)
    out.append(C @ op.L(B))
    return out


def check_pair(sys, tol=DEFAULT_TOL):
    """Rank-route and projector-route solvability test of a pair system."""
    A1, B1, C1 = sys.A1, sys.B1, sys.C1
    A2, B2, C2 = sys.A2, sys.B2, sys.C2
    cb = CertificateBuilder(sys.kind, tol)
    for i, (A, B, C) in enumerate(((A1, B1, C1), (A2, B2, C2)), start=1):
        cb.rank_eq(f"eq{i}", block([[C, A], [B, 0]]), A, B)
    if sys.kind == "common_right":
        cb.rank_eq("joint", block([[B2, B1, 0, 0], [C2, C1, A1, A2]]),
                   hstack(A1, A2), hstack(B1, B2))
    elif sys.kind == "chain":
        cb.rank_eq("joint", block([[A2 @ A1, A2 @ C1 + C2 @ B1], [0, B2 @ B1]]),
                   A2 @ A1, B2 @ B1)
    else:
        cb.rank_eq("joint", block([[C1, A1], [C2, A2], [B1, 0], [B2, 0]]),
                   vstack(A1, A2), vstack(B1, B2))

    op = Ops(solver_tol(tol, sys.scale()))
    labels = PAIR_PROJECTOR_LABELS[sys.kind]
    for label, product in zip(labels, pair_projector_products(sys, op)):
        cb.vanishes(label, product, sys.scale())
    return cb.cert


def solve_pair(sys, free=None, tol=DEFAULT_TOL, check=True, op=None):
    """General solution ``(X1, X2, X3)`` of a pair system.

    Any choice of the free parameters ``W1..W6`` yields a solution.  ``op``
    lets a caller share one :class:`Ops` cache across several solves.
    """
    if check:
        cert = check_pair(sys, tol)
        if not cert.projector_verdict:
            raise Inconsistent(f"{sys.kind} pair is not solvable", cert)
    op = op or Ops(solver_tol(tol, sys.scale()))
    w = _free(free).resolve(pair_param_shapes(sys))
    W1, W2, W3, W4, W5, W6 = (w[f"W{k}"] for k in range(1, 7))
    A1, B1, C1 = sys.A1, sys.B1, sys.C1
    A2, B2, C2 = sys.A2, sys.B2, sys.C2
    o = pair_operators(sys, op)
    A1p, B1p = op.P(A1), op.P(B1)
    RA1C1B1p = op.R(A1) @ C1 @ B1p

    if sys.kind == "common_right":
        A, B, C, D1 = o["A"], o["B"], o["C"], o["D1"]
        U1 = op.P(A) @ C @ op.P(B) + op.L(A) @ W2 + W3 @ op.R(B)
        G = C2 - RA1C1B1p @ B2 + A1 @ U1 @ B2
        V1 = -(op.R(A2) @ G @ op.P(D1)) + A2 @ W4 + W5 @ op.R(D1)
        X1 = A1p @ C1 + U1 @ B1 + op.L(A1) @ W1
        X2 = -RA1C1B1p + A1 @ U1 + V1 @ op.R(B1)
        X3 = op.P(A2) @ G + W4 @ D1 + op.L(A2) @ W6
    elif sys.kind == "chain":
        A21, A11, B11, C11 = o["A2A1"], o["A11"], o["B11"], o["C11"]
        V1 = op.P(A11) @ C11 @ op.P(B11) + op.L(A11) @ W2 + W3 @ op.R(B11)
        G = C2 + A2 @ RA1C1B1p - A2 @ V1 @ op.R(B1)
        U1 = op.P(A21) @ G + W4 @ B2 + op.L(A21) @ W6
        X1 = A1p @ C1 + U1 @ B1 + op.L(A1) @ W1
        X2 = -RA1C1B1p + A1 @ U1 + V1 @ op.R(B1)
        X3 = -(op.R(A21) @ G @ op.P(B2)) + A21 @ W4 + W5 @ op.R(B2)
    else:
        F, A11, B11, C11 = o["A2LA1"], o["A11"], o["B11"], o["C11"]
        U1 = op.P(A11) @ C11 @ op.P(B11) + op.L(A11) @ W4 + W5 @ op.R(B11)
        G = C2 - A2 @ A1p @ C1 - A2 @ U1 @ B1
        U2 = op.P(F) @ G + W1 @ B2 + op.L(F) @ W2
        X1 = A1p @ C1 + U1 @ B1 + op.L(A1) @ U2
        X2 = -RA1C1B1p + A1 @ U1 + W6 @ op.R(B1)
        X3 = -(op.R(F) @ G @ op.P(B2)) + F @ W1 + W3 @ op.R(B2)

    X = {1: X1, 2: X2, 3: X3}
    return Solution(X, params=w, residuals=sys.residuals(X), scale=sys.scale())


# -- A1X1 + X2B1 + C3X3D3 + C4X4D4 = E1 -------------------------------------

def four_term_operators(eq, op):
    """``A, B, C, D, E, M, N, S`` of the four-term equation."""
    RA1, LB1 = op.R(eq.A1), op.L(eq.B1)
    A = RA1 @ eq.C3
    B = eq.D3 @ LB1
    C = RA1 @ eq.C4
    D = eq.D4 @ LB1
    E = RA1 @ eq.E1 @ LB1
    M = op.R(A) @ C
    N = D @ op.L(B)
    S = C @ op.L(M)
    return {"A": A, "B": B, "C": C, "D": D, "E": E, "M": M, "N": N, "S": S}


def four_term_param_shapes(eq):
    X = eq.unknown_shapes
    return {"T1": X[4], "T2": X[4], "T3": X[4], "T4": X[3], "T5": X[3],
            "T6": X[1], "T7": X[2], "T8": X[2]}


def check_four_term(eq, tol=DEFAULT_TOL, op=None, ops=None):
    """Projector test ``R_M R_A E = 0, E L_B L_N = 0, R_A E L_D = 0, R_C E L_B = 0``."""
    op = op or Ops(solver_tol(tol, eq.scale()))
    o = ops or four_term_operators(eq, op)
    A, B, C, D, E, M, N = (o[k] for k in "ABCDEMN")
    cb = CertificateBuilder("four_term", tol)
    scale = eq.scale()
    cb.vanishes("R_M R_A E", op.R(M) @ op.R(A) @ E, scale)
    cb.vanishes("E L_B L_N", E @ op.L(B) @ op.L(N), scale)
    cb.vanishes("R_A E L_D", op.R(A) @ E @ op.L(D), scale)
    cb.vanishes("R_C E L_B", op.R(C) @ E @ op.L(B), scale)
    return cb.cert


def _four_term_core(o, op, T):
    """``X3``, ``X4`` of ``A X3 B + C X4 D = E`` in terms of ``T1..T5``."""
    A, B, C, D, E, M, N, S = (o[k] for k in "ABCDEMNS")
    Ap, Bp, Cp = op.P(A), op.P(B), op.P(C)
    Mp, Np, Sp = op.P(M), op.P(N), op.P(S)
    LM = op.L(M)
    RN = op.R(N)
    X3 = (
        Ap @ E @ Bp
        - Ap @ C @ Mp @ E @ Bp
        - Ap @ S @ Cp @ E @ Np @ D @ Bp
        - Ap @ S @ T["T2"] @ RN @ D @ Bp
        + op.L(A) @ T["T4"]
        + T["T5"] @ op.R(B)
    )
    X4 = (
        Mp @ E @ op.P(D)
        + Sp @ S @ Cp @ E @ Np
        + LM @ op.L(S) @ T["T1"]
        + LM @ T["T2"] @ RN
        + T["T3"] @ op.R(D)
    )
    return X3, X4


def _four_term_outer(eq, op, X3, X4, T6, T7, T8):
    """``X1``, ``X2`` once ``X3``, ``X4`` are fixed."""
    F = eq.E1 - eq.C3 @ X3 @ eq.D3 - eq.C4 @ X4 @ eq.D4
    A1p = op.P(eq.A1)
    X1 = A1p @ F - A1p @ T7 @ eq.B1 + op.L(eq.A1) @ T6
    X2 = op.R(eq.A1) @ F @ op.P(eq.B1) + eq.A1 @ A1p @ T7 + T8 @ op.R(eq.B1)
    return X1, X2


def solve_four_term(eq, free=None, tol=DEFAULT_TOL, check=True):
    """General solution ``(X1, X2, X3, X4)`` of the four-term equation."""
    op = Ops(solver_tol(tol, eq.scale()))
    o = four_term_operators(eq, op)
    if check:
        cert = check_four_term(eq, tol, op, o)
        if not cert.projector_verdict:
            raise Inconsistent("four-term equation is not solvable", cert)
    T = _free(free).resolve(four_term_param_shapes(eq))
    X3, X4 = _four_term_core(o, op, T)
    X1, X2 = _four_term_outer(eq, op, X3, X4, T["T6"], T["T7"], T["T8"])
    X = {1: X1, 2: X2, 3: X3, 4: X4}
    return Solution(X, params=T, residuals=eq.residuals(X), scale=eq.scale())


# -- rank identities --------------------------------------------------------

def rank_identity_check(A, B, C, tol=DEFAULT_TOL):
    """``(r(A) + r(R_A B) == r([A, B]), r(A) + r(C L_A) == r([A; C]))``.

    The projected products are ranked with the solver's absolute floor, since
    a projector that should annihilate its operand leaves roundoff behind.
    """
    op = Ops(solver_tol(tol, 1.0 + max(A.norm(), B.norm(), C.norm())))
    rA = rank(A, tol)
    first = rA + rank(op.R(A) @ B, op.tol) == rank(hstack(A, B), tol)
    second = rA + rank(C @ op.L(A), op.tol) == rank(vstack(A, C), tol)
    return first, second
