import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quatsylv import (
    FourTermEquation,
    FreeParameters,
    Inconsistent,
    QuatMatrix,
    check_four_term,
    check_pair,
    rank_identity_check,
    solve_four_term,
    solve_pair,
    solve_single,
)
from quatsylv.blocks import four_term_param_shapes, pair_param_shapes, single_param_shapes
from quatsylv.generate import generate, low_rank, perturb, random_quat

seeds = st.integers(0, 2**31 - 1)
PAIR_KINDS = ("common_right", "chain", "common_left")


# -- A X - Y B = C ----------------------------------------------------------------

@given(seeds, st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.integers(1, 4))
def test_single_planted(seed, m, p, q, n):
    rng = np.random.default_rng(seed)
    A, B = low_rank(rng, m, p, min(m, p) - 1), low_rank(rng, q, n, min(q, n) - 1)
    X, Y = random_quat(rng, p, n), random_quat(rng, m, q)
    C = A @ X - Y @ B
    shapes = single_param_shapes(A, B, C)
    for free in (None, FreeParameters.random(shapes, rng)):
        X1, Y1 = solve_single(A, B, C, free)
        assert (A @ X1 - Y1 @ B - C).norm() <= 1e-9 * (1 + C.norm())


def test_single_inconsistent():
    A = QuatMatrix([[1.0], [0.0]])
    B = QuatMatrix([[1.0, 0.0]])
    C = QuatMatrix([[0.0, 0.0], [0.0, 1.0]])  # R_A C L_B has the (2,2) entry
    with pytest.raises(Inconsistent):
        solve_single(A, B, C)


# -- pairs --------------------------------------------------------------------------

@pytest.mark.parametrize("kind", PAIR_KINDS)
@given(seed=seeds, size=st.integers(1, 4))
def test_pair_planted(kind, seed, size):
    sys, _ = generate(kind, size, seed)
    cert = check_pair(sys)
    assert cert.rank_verdict and cert.projector_verdict
    rng = np.random.default_rng(seed)
    for free in (None, FreeParameters.random(pair_param_shapes(sys), rng)):
        sol = solve_pair(sys, free)
        assert sol.max_relative_residual <= 1e-8


@pytest.mark.parametrize("kind", PAIR_KINDS)
def test_pair_perturbed_is_flagged(kind):
    for seed in range(20):
        sys, _ = generate(kind, 3, seed)
        cert = check_pair(perturb(sys, seed))
        assert not cert.rank_verdict and not cert.projector_verdict
        with pytest.raises(Inconsistent):
            solve_pair(perturb(sys, seed))


@pytest.mark.parametrize("kind", PAIR_KINDS)
def test_pair_zero_rhs_gives_zero_solution(kind):
    sys, _ = generate(kind, 2, 0)
    z = {f"C{i}": QuatMatrix.zeros(*sys[f"C{i}"].shape) for i in (1, 2)}
    sol = solve_pair(sys.replace(**z))
    assert all(X.norm() == 0 for X in sol.X.values())


def test_pair_rejects_wrong_parameter_shape():
    from quatsylv import ShapeError

    sys, _ = generate("chain", 2, 0)
    with pytest.raises(ShapeError):
        solve_pair(sys, {"W1": QuatMatrix.zeros(5, 5)})


# -- four-term equation ------------------------------------------------------------

def planted_four_term(rng, dims):
    m, n, p1, q2, r3, c3, r4, c4 = dims
    A1 = low_rank(rng, m, p1, max(min(m, p1) - 1, 0))
    B1 = low_rank(rng, q2, n, max(min(q2, n) - 1, 0))
    C3, D3 = low_rank(rng, m, r3, min(m, r3)), low_rank(rng, c3, n, min(c3, n))
    C4, D4 = low_rank(rng, m, r4, min(m, r4)), low_rank(rng, c4, n, min(c4, n))
    X = [random_quat(rng, p1, n), random_quat(rng, m, q2),
         random_quat(rng, r3, c3), random_quat(rng, r4, c4)]
    E1 = A1 @ X[0] + X[1] @ B1 + C3 @ X[2] @ D3 + C4 @ X[3] @ D4
    return FourTermEquation(A1, B1, C3, D3, C4, D4, E1)


@given(seeds, st.lists(st.integers(1, 3), min_size=8, max_size=8))
def test_four_term_planted(seed, dims):
    rng = np.random.default_rng(seed)
    eq = planted_four_term(rng, dims)
    assert check_four_term(eq).projector_verdict
    for free in (None, FreeParameters.random(four_term_param_shapes(eq), rng)):
        sol = solve_four_term(eq, free)
        assert sol.max_relative_residual <= 1e-8


def test_four_term_shape_check():
    from quatsylv import ShapeError

    Z = QuatMatrix.zeros
    with pytest.raises(ShapeError):
        FourTermEquation(Z(2, 2), Z(2, 2), Z(3, 2), Z(2, 2), Z(2, 2), Z(2, 2), Z(2, 2))


# -- rank identities ---------------------------------------------------------------

@given(seeds, st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.integers(1, 4))
def test_rank_identities(seed, m, n, kb, kc):
    rng = np.random.default_rng(seed)
    A = low_rank(rng, m, n, int(rng.integers(0, min(m, n) + 1)))
    B = low_rank(rng, m, kb, int(rng.integers(0, min(m, kb) + 1)))
    C = low_rank(rng, kc, n, int(rng.integers(0, min(kc, n) + 1)))
    assert rank_identity_check(A, B, C) == (True, True)
