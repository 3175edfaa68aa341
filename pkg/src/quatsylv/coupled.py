"""Solvability tests and general solutions of the coupled four-equation systems.

Every four-equation kind splits into two pair systems that share ``X3``:

============  =========================  =========================
kind          first pair (eqs -> kind)   second pair (eqs -> kind)
============  =========================  =========================
sys01         (2, 1) common_right        (3, 4) chain
sys02         (1, 2) chain               (3, 4) common_right
sys03         (1, 2) chain               (4, 3) chain
sys04         (1, 2) chain               (3, 4) chain
sys05         (2, 1) common_right        (3, 4) common_left
============  =========================  =========================

Each pair is solved in closed form with free parameters ``W1..W6`` (first
pair) and ``T1..T6`` (second pair).  Equating the two expressions for ``X3``
gives a four-term equation in six of those parameters,

    A33 [a; b] + [c, d] B33 + C3 x3 D3 + C4 x4 D4 = E1,

whose general solution (free parameters ``Z1..Z8``) fixes them; the remaining
``W``, ``T`` and all ``Z`` stay free.
"""
from dataclasses import dataclass, field

from .blocks import (
    Ops,
    _four_term_core,
    _four_term_outer,
    check_four_term,
    four_term_operators,
    four_term_param_shapes,
    pair_operators,
    pair_param_shapes,
    pair_projector_products,
    solve_pair,
    solver_tol,
)
from .certificate import CertificateBuilder
from .conditions import rank_conditions
from .errors import Inconsistent, ShapeError
from .quaternion import DEFAULT_TOL, QuatMatrix, hstack, vstack
from .systems import (
    COUPLED_KINDS,
    SPECIAL_KINDS,
    CoupledSystem,
    FourTermEquation,
    FreeParameters,
    PairSystem,
    Solution,
)

__all__ = [
    "AuxiliaryOperators",
    "SolutionBundle",
    "auxiliary_operators",
    "check",
    "solve",
    "solve_special",
    "shape_query",
    "pad_special",
]

SolutionBundle = Solution

# (pair kind, system equations in pair order, system unknowns for pair X1..X3)
SPLITS = {
    "sys01": (("common_right", (2, 1), (3, 2, 1)), ("chain", (3, 4), (3, 4, 5))),
    "sys02": (("chain", (1, 2), (1, 2, 3)), ("common_right", (3, 4), (3, 4, 5))),
    "sys03": (("chain", (1, 2), (1, 2, 3)), ("chain", (4, 3), (5, 4, 3))),
    "sys04": (("chain", (1, 2), (1, 2, 3)), ("chain", (3, 4), (3, 4, 5))),
    "sys05": (("common_right", (2, 1), (3, 2, 1)), ("common_left", (3, 4), (4, 3, 5))),
}

# parameters fixed by the splice: x1 = [a; b], x2 = [c, d], x3, x4
SPLICE = {
    "sys01": (("W1", "T1"), ("W3", "T4"), "W2", "T6"),
    "sys02": (("W4", "T1"), ("W5", "T3"), "W3", "T2"),
    "sys03": (("W4", "T4"), ("W5", "T5"), "W3", "T3"),
    "sys04": (("W4", "T1"), ("W5", "T4"), "W3", "T6"),
    "sys05": (("W1", "T4"), ("W3", "T6"), "W2", "T5"),
}

# published names of the pair intermediates, ``{}`` standing for 11 or 22
_PAIR_NAMES = {
    "common_right": {"D1": "A{}", "A": "B{}", "B": "C{}", "C": "D{}"},
    "chain": {"A11": "A{}", "B11": "B{}", "C11": "C{}"},
    "common_left": {"A11": "A{}", "B11": "B{}", "C11": "C{}"},
}
_PAIR_LABELS = {
    "common_right": ("R_A{a} C{a} L_B{a}", "R_B{j} D{j}", "D{j} L_C{j}"),
    "chain": ("R_A{a} C{a} L_B{a}", "R_A{j} C{j}", "C{j} L_B{j}"),
    "common_left": ("R_A{a} C{a} L_B{a}", "R_A{j} C{j}", "C{j} L_B{j}"),
}
# the four-term coefficients that carry a published name
_INNER_ALIASES = {
    "sys01": {"C4": "A44"},
    "sys02": {"D3": "A44", "C4": "B44"},
    "sys03": {"D3": "A44", "D4": "B44"},
    "sys04": {"D3": "A44", "C4": "B44"},
    "sys05": {},
}


@dataclass
class AuxiliaryOperators:
    """Intermediate operators of one coupled system.

    ``ops`` maps published names (``A11``, ``B11``, ..., ``A33``, ``B33``,
    ``E1``, ``A`` ... ``S``) to matrices; ``p`` holds the partition sizes
    ``p1..p4`` of the ``[a; b]`` and ``[c, d]`` splits.
    """

    kind: str
    ops: dict
    p: tuple
    parts: tuple = field(repr=False)
    inner: FourTermEquation = field(repr=False, default=None)

    def __getitem__(self, name):
        return self.ops[name]

    def names(self):
        return list(self.ops)


def _part(sys, spec):
    pkind, eqs, _ = spec
    coeffs = {}
    for k, i in enumerate(eqs, start=1):
        for c in "ABC":
            coeffs[f"{c}{k}"] = sys[f"{c}{i}"]
    return PairSystem(pkind, **coeffs)


def _rename(params, prefix):
    return {f"{prefix}{name[1:]}": v for name, v in params.items()}


def _shared_index(spec):
    return spec[2].index(3) + 1


def _inner_coefficients(kind, s, o1, o2, op):
    """``A33, B33, (C3, D3), (C4, D4)`` of the splice equation."""
    A1, A2, A3, A4 = s["A1"], s["A2"], s["A3"], s["A4"]
    B1, B2, B3, B4 = s["B1"], s["B2"], s["B3"], s["B4"]
    if kind == "sys01":
        A33 = hstack(op.L(A2), -op.L(A3))
        B33 = vstack(op.R(o1["B"]) @ B2, -(B4 @ B3))
        inner3 = (op.L(o1["A"]), B2)
        inner4 = (-op.L(A4 @ A3), B3)
    elif kind == "sys05":
        A33 = hstack(op.L(A2), -(A3 @ op.L(o2["A11"])))
        B33 = vstack(op.R(o1["B"]) @ B2, -op.R(B3))
        inner3 = (op.L(o1["A"]), B2)
        inner4 = (-A3, op.R(o2["B11"]))
    else:
        # first pair is the chain (1, 2)
        A44 = op.R(o1["B11"]) @ op.R(B1) @ op.P(B2)
        inner3 = (o1["A11"], A44)
        if kind == "sys02":
            A33 = hstack(A2 @ A1, -op.L(A3))
            B33 = vstack(op.R(B2), -(op.R(o2["B"]) @ B3))
            inner4 = (-op.L(o2["A"]), B3)
        elif kind == "sys03":
            A33 = hstack(A2 @ A1, -(A3 @ A4))
            B33 = vstack(op.R(B2), -op.R(B3))
            inner4 = (-o2["A11"], op.R(o2["B11"]) @ op.R(B4) @ op.P(B3))
        else:
            A33 = hstack(A2 @ A1, -op.L(A3))
            B33 = vstack(op.R(B2), -(B4 @ B3))
            inner4 = (-op.L(A4 @ A3), B3)
    return A33, B33, inner3, inner4


def auxiliary_operators(sys, tol=DEFAULT_TOL, op=None):
    """Compute the intermediate operators of a four-equation system.

    ``E1`` is the difference of the two pair expressions for ``X3`` with all
    free parameters zero.  ``op`` is an optional shared :class:`Ops` cache.
    """
    if sys.kind not in COUPLED_KINDS:
        raise ValueError(f"auxiliary_operators needs one of {COUPLED_KINDS}, got {sys.kind}")
    op = op or Ops(solver_tol(tol, sys.scale()))
    spec1, spec2 = SPLITS[sys.kind]
    part1, part2 = _part(sys, spec1), _part(sys, spec2)
    o1, o2 = pair_operators(part1, op), pair_operators(part2, op)

    ops = {}
    for j, part, o in ((11, part1, o1), (22, part2, o2)):
        for key, name in _PAIR_NAMES[part.kind].items():
            ops[name.format(j)] = o[key]

    s = sys.coeffs
    (a, b), (c, d), _, _ = SPLICE[sys.kind]
    sh1, sh2 = pair_param_shapes(part1), pair_param_shapes(part2)
    p1, p2 = sh1[a][0], sh2["W" + b[1:]][0]
    p3, p4 = sh1[c][1], sh2["W" + d[1:]][1]
    A33, B33, (C3, D3), (C4, D4) = _inner_coefficients(sys.kind, s, o1, o2, op)

    x1 = solve_pair(part1, tol=tol, check=False, op=op)[_shared_index(spec1)]
    x2 = solve_pair(part2, tol=tol, check=False, op=op)[_shared_index(spec2)]
    E1 = x2 - x1
    inner = FourTermEquation(A33, B33, C3, D3, C4, D4, E1)
    ops.update({"A33": A33, "B33": B33})
    for key, alias in _INNER_ALIASES[sys.kind].items():
        ops[alias] = {"C3": C3, "D3": D3, "C4": C4, "D4": D4}[key]
    ops["E1"] = E1
    ops.update(four_term_operators(inner, op))
    return AuxiliaryOperators(sys.kind, ops, (p1, p2, p3, p4), (part1, part2), inner)


# -- shapes -----------------------------------------------------------------

def _all_param_shapes(sys):
    spec1, spec2 = SPLITS[sys.kind]
    part1, part2 = _part(sys, spec1), _part(sys, spec2)
    shapes = dict(pair_param_shapes(part1))
    shapes.update(_rename(pair_param_shapes(part2), "T"))
    return shapes, part1, part2


def shape_query(sys):
    """Free-parameter name -> ``(rows, cols)`` for a coupled system.

    Only the parameters that remain arbitrary in the general solution are
    listed; those fixed by the splice equation are not.
    """
    if sys.kind in SPECIAL_KINDS:
        return _special_param_shapes(sys)
    shapes, part1, part2 = _all_param_shapes(sys)
    (a, b), (c, d), x3, x4 = SPLICE[sys.kind]
    for name in (a, b, c, d, x3, x4):
        del shapes[name]
    inner = _inner_shapes(sys, shapes, part1, part2)
    shapes.update({"Z" + k[1:]: v for k, v in inner.items()})
    return dict(sorted(shapes.items(), key=lambda kv: (kv[0][0], int(kv[0][1:]))))


def _inner_shapes(sys, shapes, part1, part2):
    (a, b), (c, d), x3, x4 = SPLICE[sys.kind]
    sh = dict(pair_param_shapes(part1))
    sh.update(_rename(pair_param_shapes(part2), "T"))
    X = {
        1: (sh[a][0] + sh[b][0], sh[a][1]),
        2: (sh[c][0], sh[c][1] + sh[d][1]),
        3: sh[x3],
        4: sh[x4],
    }
    return {"T1": X[4], "T2": X[4], "T3": X[4], "T4": X[3], "T5": X[3],
            "T6": X[1], "T7": X[2], "T8": X[2]}


# -- check --------------------------------------------------------------------

def check(sys, tol=DEFAULT_TOL):
    """Rank-route and projector-route solvability certificate."""
    return Solver(sys, tol).certificate


def _check(sys, tol, op):
    cb = CertificateBuilder(sys.kind, tol)
    for cid, lhs, rhs in rank_conditions(sys):
        cb.rank_eq(cid, lhs, *rhs)
    if sys.kind in SPECIAL_KINDS:
        _special_projectors(sys, cb, tol, op)
        return cb.cert, None
    aux = auxiliary_operators(sys, tol, op)
    for j, (spec, part) in zip((11, 22), zip(SPLITS[sys.kind], aux.parts)):
        labels = _PAIR_LABELS[part.kind]
        a = spec[1][0]
        for label, product in zip(labels, pair_projector_products(part, op)):
            cb.vanishes(label.format(a=a, j=j), product, part.scale())
    four = check_four_term(aux.inner, tol, op, {k: aux.ops[k] for k in "ABCDEMNS"})
    cb.cert.projector_conditions.extend(four.projector_conditions)
    return cb.cert, aux


def _require_consistent(cert, kind):
    if not (cert.rank_verdict and cert.projector_verdict):
        failed = [c.id for c in cert.rank_conditions + cert.projector_conditions if not c.holds]
        raise Inconsistent(f"{kind} is not solvable; failed: {', '.join(failed)}", cert)


def _resolve_free(sys, free, shapes=None):
    shapes = shapes or shape_query(sys)
    if free is None:
        free = FreeParameters()
    elif not isinstance(free, FreeParameters):
        free = FreeParameters(free)
    fixed = set(free.values) - set(shapes)
    if fixed:
        raise ShapeError(
            f"{sys.kind}: {sorted(fixed)} are not free parameters of the general solution"
        )
    return free.resolve(shapes)


# -- solve --------------------------------------------------------------------

class Solver:
    """Certificate and general solution of one coupled system.

    The certificate and the intermediate operators are computed once, so
    repeated :meth:`solve` calls with different free parameters are cheap.

    Parameters
    ----------
    sys : CoupledSystem
    tol : Tolerances
    """

    def __init__(self, sys, tol=DEFAULT_TOL):
        self.sys = sys
        self.tol = tol
        self.op = Ops(solver_tol(tol, sys.scale()))
        self.certificate, self.aux = _check(sys, tol, self.op)
        self._shapes = None

    @property
    def param_shapes(self):
        """Free-parameter name -> ``(rows, cols)``."""
        if self._shapes is None:
            self._shapes = shape_query(self.sys)
        return self._shapes

    def solve(self, free=None):
        """General solution for the given free parameters (absent ones are zero).

        Raises
        ------
        Inconsistent
            If either certificate route fails.
        """
        _require_consistent(self.certificate, self.sys.kind)
        params = _resolve_free(self.sys, free, self.param_shapes)
        if self.sys.kind in SPECIAL_KINDS:
            return _solve_special(self.sys, params, self.tol, self.op)
        return _solve_coupled(self.sys, params, self.tol, self.op, self.aux)


def solve(sys, free=None, tol=DEFAULT_TOL):
    """General solution of a coupled system.

    ``free`` maps names from :func:`shape_query` to matrices; absent names are
    zero.  Special kinds are dispatched to :func:`solve_special`.
    """
    return Solver(sys, tol).solve(free)


def _solve_coupled(sys, params, tol, op, aux):
    inner_op = Ops(solver_tol(tol, aux.inner.scale()))
    p1, _, p3, _ = aux.p

    T = {f"T{k}": params[f"Z{k}"] for k in range(1, 9)}
    x3, x4 = _four_term_core({k: aux.ops[k] for k in "ABCDEMNS"}, inner_op, T)
    x1, x2 = _four_term_outer(aux.inner, inner_op, x3, x4, T["T6"], T["T7"], T["T8"])

    (a, b), (c, d), n3, n4 = SPLICE[sys.kind]
    fixed = {
        a: QuatMatrix(x1.components[:p1]),
        b: QuatMatrix(x1.components[p1:]),
        c: QuatMatrix(x2.components[:, :p3]),
        d: QuatMatrix(x2.components[:, p3:]),
        n3: x3,
        n4: x4,
    }
    values = dict(params)
    values.update(fixed)

    part1, part2 = aux.parts
    spec1, spec2 = SPLITS[sys.kind]
    w = {f"W{k}": values[f"W{k}"] for k in range(1, 7)}
    t = {f"W{k}": values[f"T{k}"] for k in range(1, 7)}
    sol1 = solve_pair(part1, w, tol, check=False, op=op)
    sol2 = solve_pair(part2, t, tol, check=False, op=op)

    X = {}
    for spec, sol in ((spec2, sol2), (spec1, sol1)):
        for k, idx in enumerate(spec[2], start=1):
            X[idx] = sol[k]
    X = dict(sorted(X.items()))
    alternate = sol2[_shared_index(spec2)]
    return Solution(
        X,
        params=dict(sorted(values.items())),
        X3_alternate=alternate,
        residuals=sys.residuals(X),
        scale=sys.scale(),
    )


# -- three-equation systems -----------------------------------------------------

def _special_inner(sys, op):
    """The four-term equation of a three-equation system and its unknown names."""
    s = sys.coeffs
    A1, A2, A3 = s["A1"], s["A2"], s["A3"]
    B1, B2, B3 = s["B1"], s["B2"], s["B3"]
    C1, C2, C3 = s["C1"], s["C2"], s["C3"]
    RA1C1B1p = op.R(A1) @ C1 @ op.P(B1)
    if sys.kind == "special01":
        A4 = A2 @ op.L(A3)
        B4 = op.R(B1) @ B2
        C4 = C2 - A2 @ op.P(A3) @ C3 - RA1C1B1p @ B2
        eq = FourTermEquation(A4, B4, A2, B3, A1, B2, C4)
        names = ("V2", "U3", "V1", "U1")
    elif sys.kind == "special02":
        A21, B32 = A2 @ A1, B3 @ B2
        C4 = C2 + op.P(A3) @ C3 @ B2 + A2 @ RA1C1B1p
        eq = FourTermEquation(A21, B32, A2, op.R(B1), op.L(A3), B2, C4)
        names = ("U1", "V1", "U3", "V2")
    else:
        A21, RB3B2 = A2 @ A1, op.R(B3) @ B2
        C4 = C2 + A2 @ RA1C1B1p - op.R(A3) @ C3 @ op.P(B3) @ B2
        eq = FourTermEquation(A21, RB3B2, A2, op.R(B1), A3, B2, C4)
        names = ("U1", "V3", "U3", "V1")
    return eq, names


_SPECIAL_FREE = {
    "special01": ("U2", "V3"),
    "special02": ("U2", "V3"),
    "special03": ("U2", "V2"),
}


def _special_param_shapes(sys):
    X = sys.unknown_shapes
    extra = _SPECIAL_FREE[sys.kind]
    # U2 multiplies L_A1 (shape of X1); V3 / V2 has the shape of X4
    shapes = {extra[0]: X[1], extra[1]: X[4]}
    eq, _ = _special_inner(sys, Ops(solver_tol(DEFAULT_TOL, sys.scale())))
    shapes.update(four_term_param_shapes(eq))
    return dict(sorted(shapes.items(), key=lambda kv: (kv[0][0], int(kv[0][1:]))))


def _special_projectors(sys, cb, tol, op):
    for i in (1, 2, 3):
        A, B, C = sys[f"A{i}"], sys[f"B{i}"], sys[f"C{i}"]
        cb.vanishes(f"R_A{i} C{i} L_B{i}", op.R(A) @ C @ op.L(B), sys.scale())
    eq, _ = _special_inner(sys, op)
    four = check_four_term(eq, tol, op)
    cb.cert.projector_conditions.extend(four.projector_conditions)


def solve_special(sys, free=None, tol=DEFAULT_TOL):
    """General solution of a three-equation system by its own closed form.

    The unknowns are ``X1..X4``; there is no second ``X3`` branch, so
    ``X3_alternate`` is ``None``.
    """
    if sys.kind not in SPECIAL_KINDS:
        raise ValueError(f"solve_special needs one of {SPECIAL_KINDS}, got {sys.kind}")
    return Solver(sys, tol).solve(free)


def _solve_special(sys, params, tol, op):
    s = sys.coeffs
    A1, A3 = s["A1"], s["A3"]
    B1, B3 = s["B1"], s["B3"]
    C1, C3 = s["C1"], s["C3"]
    eq, names = _special_inner(sys, op)
    T = {f"T{k}": params[f"T{k}"] for k in range(1, 9)}
    ft_op = Ops(solver_tol(tol, eq.scale()))
    x3, x4 = _four_term_core(four_term_operators(eq, ft_op), ft_op, T)
    x1, x2 = _four_term_outer(eq, ft_op, x3, x4, T["T6"], T["T7"], T["T8"])
    v = dict(zip(names, (x1, x2, x3, x4)))
    v.update({k: params[k] for k in _SPECIAL_FREE[sys.kind]})

    A1p, A3p = op.P(A1), op.P(A3)
    RA1C1B1p = op.R(A1) @ C1 @ op.P(B1)
    RA3C3B3p = op.R(A3) @ C3 @ op.P(B3)
    if sys.kind == "special01":
        X1 = A1p @ C1 - v["U1"] @ B1 - op.L(A1) @ v["U2"]
        X2 = -RA1C1B1p - A1 @ v["U1"] - v["U3"] @ op.R(B1)
        X3 = A3p @ C3 + v["V1"] @ B3 + op.L(A3) @ v["V2"]
        X4 = -RA3C3B3p + A3 @ v["V1"] + v["V3"] @ op.R(B3)
    elif sys.kind == "special02":
        X1 = A1p @ C1 + v["U1"] @ B1 + op.L(A1) @ v["U2"]
        X2 = -RA1C1B1p + A1 @ v["U1"] + v["U3"] @ op.R(B1)
        X3 = A3p @ C3 - v["V1"] @ B3 - op.L(A3) @ v["V2"]
        X4 = -RA3C3B3p - A3 @ v["V1"] - v["V3"] @ op.R(B3)
    else:
        X1 = A1p @ C1 + v["U1"] @ B1 + op.L(A1) @ v["U2"]
        X2 = -RA1C1B1p + A1 @ v["U1"] + v["U3"] @ op.R(B1)
        X3 = -RA3C3B3p - A3 @ v["V1"] - v["V3"] @ op.R(B3)
        X4 = A3p @ C3 - v["V1"] @ B3 - op.L(A3) @ v["V2"]
    X = {1: X1, 2: X2, 3: X3, 4: X4}
    params_used = dict(params)
    params_used.update(v)
    return Solution(
        X,
        params=dict(sorted(params_used.items())),
        residuals=sys.residuals(X),
        scale=sys.scale(),
    )


def pad_special(sys):
    """Embed a three-equation system in its four-equation parent.

    The fourth equation gets 0-dimensional coefficients so that it constrains
    nothing; ``X5`` comes out 0 x 0.
    """
    from .systems import SPECIAL_PARENT

    parent = SPECIAL_PARENT[sys.kind]
    r4, c4 = sys.unknown_shapes[4]
    Z = QuatMatrix.zeros
    if parent == "sys01":
        # A4 X4 - X5 B4 = C4
        pad = {"A4": Z(0, r4), "B4": Z(0, c4), "C4": Z(0, c4)}
    else:
        # A4 X5 - X4 B4 = C4
        pad = {"A4": Z(r4, 0), "B4": Z(c4, 0), "C4": Z(r4, 0)}
    return CoupledSystem(parent, **sys.coeffs, **pad)
