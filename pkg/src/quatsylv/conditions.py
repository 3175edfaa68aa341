"""Rank-equality conditions of the coupled systems, one table per kind.

Each condition is ``r(lhs) == r(rhs_1) + r(rhs_2)`` with the block matrices
built exactly as the solvability theorems state them.  Condition ids are the
published equation labels so certificates can be compared line by line with
the printed examples.  Two printed block matrices carry misplaced entries and
are used in corrected form: the ``(3.12)`` matrix (``C3`` belongs in the
``C2`` column) and the ``(6.4)`` corner (its ``A`` factors on the right of
``C_i`` are ``B`` factors).
"""
from .quaternion import block, hstack, vstack

__all__ = ["rank_conditions", "PRINTED_312"]


def _per_equation(label, s, n):
    out = []
    for i in range(1, n + 1):
        A, B, C = s[f"A{i}"], s[f"B{i}"], s[f"C{i}"]
        out.append((f"{label} i={i}", block([[C, A], [B, 0]]), (A, B)))
    return out


def _chain2(A2, A1, B2, B1, C2, C1):
    """``[[A2C1 + C2B1, A2A1], [B2B1, 0]]`` and its right-hand side."""
    return block([[A2 @ C1 + C2 @ B1, A2 @ A1], [B2 @ B1, 0]]), (A2 @ A1, B2 @ B1)


def _sys01(s):
    A1, A2, A3, A4 = s["A1"], s["A2"], s["A3"], s["A4"]
    B1, B2, B3, B4 = s["B1"], s["B2"], s["B3"], s["B4"]
    C1, C2, C3, C4 = s["C1"], s["C2"], s["C3"], s["C4"]
    K = A4 @ C3 + C4 @ B3
    out = _per_equation("(3.7)", s, 4)
    out.append(("(3.8)", block([[C1, C2, A1, A2], [B1, B2, 0, 0]]),
                (hstack(A1, A2), hstack(B1, B2))))
    out.append(("(3.9)", block([[K, A4 @ A3], [B4 @ B3, 0]]), (A4 @ A3, B4 @ B3)))
    out.append(("(3.10)",
                block([[C1, C2, A1, A2], [0, K, 0, A4 @ A3],
                       [B1, B2, 0, 0], [0, B4 @ B3, 0, 0]]),
                (block([[A1, A2], [0, A4 @ A3]]), block([[B1, B2], [0, B4 @ B3]]))))
    out.append(("(3.11)", block([[C2, A2], [C3, A3], [B2, 0], [B3, 0]]),
                (vstack(A2, A3), vstack(B2, B3))))
    out.append(("(3.12)",
                block([[C1, C2, A1, A2], [0, C3, 0, A3],
                       [B1, B2, 0, 0], [0, B3, 0, 0]]),
                (block([[A1, A2], [0, A3]]), block([[B1, B2], [0, B3]]))))
    out.append(("(3.13)", block([[C2, A2], [K, A4 @ A3], [B2, 0], [B4 @ B3, 0]]),
                (vstack(A2, A4 @ A3), vstack(B2, B4 @ B3))))
    return out


def PRINTED_312(s):
    """The ``(3.12)`` block matrix with ``C3`` in the column printed.

    Only conformable when ``C3`` and ``C1`` have equally many columns; kept
    for comparing the printed layout with the corrected one.
    """
    A1, A2, A3 = s["A1"], s["A2"], s["A3"]
    B1, B2, B3 = s["B1"], s["B2"], s["B3"]
    C1, C2, C3 = s["C1"], s["C2"], s["C3"]
    return block([[C1, C2, A1, A2], [C3, 0, 0, A3], [B1, B2, 0, 0], [0, B3, 0, 0]])


def _sys02(s):
    A1, A2, A3, A4 = s["A1"], s["A2"], s["A3"], s["A4"]
    B1, B2, B3, B4 = s["B1"], s["B2"], s["B3"], s["B4"]
    C1, C2, C3, C4 = s["C1"], s["C2"], s["C3"], s["C4"]
    K32 = A3 @ C2 + C3 @ B2
    K321 = A3 @ A2 @ C1 + A3 @ C2 @ B1 + C3 @ B2 @ B1
    A321, B321 = A3 @ A2 @ A1, B3 @ B2 @ B1
    out = _per_equation("(4.1)", s, 4)
    out.append(("(4.2)", *_chain2(A2, A1, B2, B1, C2, C1)))
    out.append(("(4.3)", block([[C3, C4, A3, A4], [B3, B4, 0, 0]]),
                (hstack(A3, A4), hstack(B3, B4))))
    out.append(("(4.4)", block([[K32, C4, A3 @ A2, A4], [B3 @ B2, B4, 0, 0]]),
                (hstack(A3 @ A2, A4), hstack(B3 @ B2, B4))))
    out.append(("(4.5)", block([[K321, A321], [B321, 0]]), (A321, B321)))
    out.append(("(4.6)", *_chain2(A3, A2, B3, B2, C3, C2)))
    out.append(("(4.7)", block([[K321, C4, A4, A321], [B321, B4, 0, 0]]),
                (hstack(A321, A4), hstack(B321, B4))))
    return out


def _sys03(s):
    A1, A2, A3, A4 = s["A1"], s["A2"], s["A3"], s["A4"]
    B1, B2, B3, B4 = s["B1"], s["B2"], s["B3"], s["B4"]
    C1, C2, C3, C4 = s["C1"], s["C2"], s["C3"], s["C4"]
    K21 = A2 @ C1 + C2 @ B1
    K34 = A3 @ C4 + C3 @ B4
    out = _per_equation("(5.1)", s, 4)
    out.append(("(5.2)", *_chain2(A2, A1, B2, B1, C2, C1)))
    out.append(("(5.3)", *_chain2(A3, A4, B3, B4, C3, C4)))
    out.append(("(5.4)", block([[C2, C3, A2, A3], [B2, B3, 0, 0]]),
                (hstack(A2, A3), hstack(B2, B3))))
    out.append(("(5.5)", block([[K21, K34, A2 @ A1, A3 @ A4], [B2 @ B1, B3 @ B4, 0, 0]]),
                (hstack(A2 @ A1, A3 @ A4), hstack(B2 @ B1, B3 @ B4))))
    out.append(("(5.6)", block([[C2, K34, A2, A3 @ A4], [B2, B3 @ B4, 0, 0]]),
                (hstack(A2, A3 @ A4), hstack(B2, B3 @ B4))))
    out.append(("(5.7)", block([[K21, C3, A2 @ A1, A3], [B2 @ B1, B3, 0, 0]]),
                (hstack(A2 @ A1, A3), hstack(B2 @ B1, B3))))
    return out


def _sys04(s):
    A = [None] + [s[f"A{i}"] for i in range(1, 5)]
    B = [None] + [s[f"B{i}"] for i in range(1, 5)]
    C = [None] + [s[f"C{i}"] for i in range(1, 5)]
    out = _per_equation("(6.1)", s, 4)
    for k in (1, 2, 3):
        out.append((f"(6.2) k={k}", *_chain2(A[k + 1], A[k], B[k + 1], B[k], C[k + 1], C[k])))
    for j in (1, 2):
        a = A[j + 2] @ A[j + 1] @ A[j]
        b = B[j + 2] @ B[j + 1] @ B[j]
        K = (A[j + 2] @ A[j + 1] @ C[j] + A[j + 2] @ C[j + 1] @ B[j]
             + C[j + 2] @ B[j + 1] @ B[j])
        out.append((f"(6.3) j={j}", block([[K, a], [b, 0]]), (a, b)))
    a = A[4] @ A[3] @ A[2] @ A[1]
    b = B[4] @ B[3] @ B[2] @ B[1]
    K = (A[4] @ A[3] @ A[2] @ C[1] + A[4] @ A[3] @ C[2] @ B[1]
         + A[4] @ C[3] @ B[2] @ B[1] + C[4] @ B[3] @ B[2] @ B[1])
    out.append(("(6.4)", block([[K, a], [b, 0]]), (a, b)))
    return out


def _sys05(s):
    A1, A2, A3, A4 = s["A1"], s["A2"], s["A3"], s["A4"]
    B1, B2, B3, B4 = s["B1"], s["B2"], s["B3"], s["B4"]
    C1, C2, C3, C4 = s["C1"], s["C2"], s["C3"], s["C4"]
    K = A2 @ C3 + C2 @ B3
    A23, B23 = A2 @ A3, B2 @ B3
    out = _per_equation("(7.1)", s, 4)
    out.append(("(7.2)", block([[C1, C2, A1, A2], [B1, B2, 0, 0]]),
                (hstack(A1, A2), hstack(B1, B2))))
    out.append(("(7.3)", block([[C3, A3], [C4, A4], [B3, 0], [B4, 0]]),
                (vstack(A3, A4), vstack(B3, B4))))
    out.append(("(7.4)", block([[C1, K, A1, A23], [B1, B23, 0, 0]]),
                (hstack(A1, A23), hstack(B1, B23))))
    out.append(("(7.5)", block([[K, A23], [C4, A4], [B23, 0], [B4, 0]]),
                (vstack(A23, A4), vstack(B23, B4))))
    out.append(("(7.6)", block([[K, A23], [B23, 0]]), (A23, B23)))
    out.append(("(7.7)",
                block([[C1, K, A1, A23], [0, C4, 0, A4], [B1, B23, 0, 0], [0, B4, 0, 0]]),
                (block([[A1, A23], [0, A4]]), block([[B1, B23], [0, B4]]))))
    return out


# The three-equation systems have no numbered conditions of their own; their
# ids name the equations involved.

def _special01(s):
    A1, A2, A3 = s["A1"], s["A2"], s["A3"]
    B1, B2, B3 = s["B1"], s["B2"], s["B3"]
    C1, C2, C3 = s["C1"], s["C2"], s["C3"]
    out = _per_equation("eq", s, 3)
    out.append(("eq1+eq2", block([[A1, A2, C1, C2], [0, 0, B1, B2]]),
                (hstack(A1, A2), hstack(B1, B2))))
    out.append(("eq2+eq3", block([[B2, 0], [B3, 0], [C2, A2], [C3, A3]]),
                (vstack(A2, A3), vstack(B2, B3))))
    out.append(("eq1+eq2+eq3",
                block([[C2, C1, A1, A2], [C3, 0, 0, A3], [B2, B1, 0, 0], [B3, 0, 0, 0]]),
                (block([[A1, A2], [0, A3]]), block([[B2, B1], [B3, 0]]))))
    return out


def _special02(s):
    A1, A2, A3 = s["A1"], s["A2"], s["A3"]
    B1, B2, B3 = s["B1"], s["B2"], s["B3"]
    C1, C2, C3 = s["C1"], s["C2"], s["C3"]
    out = _per_equation("eq", s, 3)
    out.append(("eq2+eq3", *_chain2(A3, A2, B3, B2, C3, C2)))
    out.append(("eq1+eq2", *_chain2(A2, A1, B2, B1, C2, C1)))
    a, b = A3 @ A2 @ A1, B3 @ B2 @ B1
    K = A3 @ A2 @ C1 + A3 @ C2 @ B1 + C3 @ B2 @ B1
    out.append(("eq1+eq2+eq3", block([[K, a], [b, 0]]), (a, b)))
    return out


def _special03(s):
    A1, A2, A3 = s["A1"], s["A2"], s["A3"]
    B1, B2, B3 = s["B1"], s["B2"], s["B3"]
    C1, C2, C3 = s["C1"], s["C2"], s["C3"]
    out = _per_equation("eq", s, 3)
    out.append(("eq2+eq3", block([[A2, A3, C2, C3], [0, 0, B2, B3]]),
                (hstack(A2, A3), hstack(B2, B3))))
    out.append(("eq1+eq2", *_chain2(A2, A1, B2, B1, C2, C1)))
    out.append(("eq1+eq2+eq3",
                block([[A3, A2 @ A1, C3, A2 @ C1 + C2 @ B1], [0, 0, B3, B2 @ B1]]),
                (hstack(A3, A2 @ A1), hstack(B3, B2 @ B1))))
    return out


_TABLES = {
    "sys01": _sys01, "sys02": _sys02, "sys03": _sys03, "sys04": _sys04,
    "sys05": _sys05, "special01": _special01, "special02": _special02,
    "special03": _special03,
}


def rank_conditions(sys):
    """``[(id, lhs_matrix, (rhs_1, rhs_2)), ...]`` for a coupled system."""
    return _TABLES[sys.kind](sys.coeffs)
