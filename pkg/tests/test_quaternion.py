from unittest import mock

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quatsylv import (
    AdjointStructureError,
    QuatMatrix,
    Quaternion,
    Tolerances,
    ToleranceError,
    complex_rank,
    conj_transpose,
    from_adjoint,
    pinv,
    proj_L,
    proj_R,
    qmul,
    rank,
    to_adjoint,
)
from quatsylv.generate import low_rank, random_quat

from conftest import fro_scale, quat_matrices

i, j, k = Quaternion(0, 1, 0, 0), Quaternion(0, 0, 1, 0), Quaternion(0, 0, 0, 1)
one = Quaternion(1, 0, 0, 0)


# -- scalars ----------------------------------------------------------------

def test_hamilton_table():
    assert qmul(i, j) == k
    assert qmul(j, i) == -k
    assert qmul(i, i) == qmul(j, j) == qmul(k, k) == -one
    assert qmul(qmul(i, j), k) == -one


def test_distributive_expansion():
    assert qmul(one + i, one + j) == Quaternion(1, 1, 1, 1)


def test_conjugate_and_norm():
    q = Quaternion(1, -2, 3, 4)
    assert q.conj() == Quaternion(1, 2, -3, -4)
    assert q.norm2() == 30
    assert qmul(q, q.conj()) == Quaternion(30, 0, 0, 0)
    assert abs(q) == pytest.approx(np.sqrt(30))


quats = st.tuples(*[st.integers(-5, 5)] * 4).map(lambda t: Quaternion(*map(float, t)))


@given(quats, quats, quats)
def test_associative_and_distributive(p, q, r):
    assert qmul(qmul(p, q), r) == qmul(p, qmul(q, r))
    assert qmul(p, q + r) == qmul(p, q) + qmul(p, r)


@given(quats.filter(lambda q: q.norm2() > 0))
def test_inverse(q):
    inv = q.inverse()
    prod = qmul(q, inv)
    assert np.allclose(list(prod), [1, 0, 0, 0])


def test_scalar_product_matches_matrix_product():
    p, q = Quaternion(1, 2, -1, 0.5), Quaternion(-3, 0, 2, 1)
    P, Q = QuatMatrix([[p]]), QuatMatrix([[q]])
    assert (P @ Q)[0, 0] == qmul(p, q)


# -- matrices ---------------------------------------------------------------

def test_conj_transpose_examples():
    assert conj_transpose(QuatMatrix([[i]])) == QuatMatrix([[-i]])
    assert conj_transpose(QuatMatrix.eye(3)) == QuatMatrix.eye(3)


@given(quat_matrices(), st.data())
def test_conj_transpose_involution_and_product(A, data):
    B = data.draw(quat_matrices(rows=A.cols))
    assert conj_transpose(conj_transpose(A)) == A
    assert (A @ B).H.allclose(B.H @ A.H, atol=1e-12 * fro_scale(A, B) ** 2)


def test_matrix_shape_checks():
    from quatsylv import ShapeError

    with pytest.raises(ShapeError):
        QuatMatrix.zeros(2, 3) @ QuatMatrix.zeros(2, 3)
    with pytest.raises(ShapeError):
        QuatMatrix.zeros(2, 3) + QuatMatrix.zeros(3, 2)


def test_entries_row_major():
    A = QuatMatrix([[1, i], [j, k]])
    assert A.entries() == [one, i, j, k]
    assert A.shape == (2, 2)


# -- complex adjoint -----------------------------------------------------------

def test_adjoint_of_one_plus_j():
    chi = to_adjoint(QuatMatrix([[Quaternion(1, 0, 1, 0)]])).data
    assert np.array_equal(chi, np.array([[1, 1], [-1, 1]], dtype=complex))


def test_adjoint_of_zero():
    chi = to_adjoint(QuatMatrix.zeros(2, 3)).data
    assert chi.shape == (4, 6) and not chi.any()


@given(quat_matrices(elements=st.floats(-10, 10)))
def test_adjoint_round_trip_exact(A):
    assert from_adjoint(to_adjoint(A).data) == A


@given(quat_matrices(), st.data())
def test_adjoint_homomorphism(A, data):
    B = data.draw(quat_matrices(rows=A.cols))
    lhs = to_adjoint(A @ B).data
    rhs = to_adjoint(A).data @ to_adjoint(B).data
    assert np.linalg.norm(lhs - rhs) <= 1e-12 * fro_scale(A, B) ** 2
    assert np.allclose(to_adjoint(A.H).data, to_adjoint(A).data.conj().T)
    assert np.allclose(to_adjoint(A + A).data, 2 * to_adjoint(A).data)


def test_from_adjoint_rejects_unstructured():
    with pytest.raises(AdjointStructureError):
        from_adjoint(np.arange(4.0).reshape(2, 2))


# -- rank -------------------------------------------------------------------

def test_rank_examples():
    assert rank(QuatMatrix.eye(3)) == 3
    assert rank(QuatMatrix.zeros(2, 3)) == 0
    assert rank(QuatMatrix([[1, i], [j, k]])) == 2
    assert rank(QuatMatrix.zeros(0, 4)) == 0


def test_rank_of_left_dependent_rows():
    # second row is j times the first: rank 1 even though not a real multiple
    r = [Quaternion(1, 2, 0, 0), Quaternion(0, 1, 1, 0)]
    A = QuatMatrix([r, [qmul(j, x) for x in r]])
    assert rank(A) == 1


@given(st.integers(0, 2**31 - 1), st.integers(1, 5), st.integers(1, 5), st.integers(0, 5))
def test_rank_of_planted_low_rank(seed, m, n, r):
    A = low_rank(np.random.default_rng(seed), m, n, min(r, m, n))
    assert rank(A) == min(r, m, n)
    assert complex_rank(A) == 2 * rank(A)


def test_odd_complex_rank_is_a_tolerance_error():
    # exact adjoints have paired singular values; fake an unpaired spectrum
    with mock.patch("numpy.linalg.svd", return_value=np.array([2.0, 0.5])):
        with pytest.raises(ToleranceError):
            rank(QuatMatrix([[1.0]]), Tolerances(rank_atol=1.0))


# -- pinv and projectors ---------------------------------------------------------

def test_pinv_examples():
    assert pinv(QuatMatrix.eye(3)).allclose(QuatMatrix.eye(3), atol=1e-15)
    assert pinv(QuatMatrix([[i]])).allclose(QuatMatrix([[-i]]), atol=1e-15)
    assert pinv(QuatMatrix.zeros(2, 3)) == QuatMatrix.zeros(3, 2)
    assert pinv(QuatMatrix.zeros(0, 3)).shape == (3, 0)


def penrose_residuals(A, X):
    return (
        (A @ X @ A - A).norm(),
        (X @ A @ X - X).norm(),
        ((A @ X).H - A @ X).norm(),
        ((X @ A).H - X @ A).norm(),
    )


@given(st.integers(0, 2**31 - 1), st.integers(1, 5), st.integers(1, 5), st.integers(0, 5))
def test_pinv_penrose(seed, m, n, r):
    rng = np.random.default_rng(seed)
    A = low_rank(rng, m, n, min(r, m, n)) if r < min(m, n) else random_quat(rng, m, n)
    X = pinv(A)
    s = fro_scale(A, X) ** 3
    assert max(penrose_residuals(A, X)) <= 1e-10 * s


@given(quat_matrices(min_dim=1))
def test_projectors(A):
    L, R = proj_L(A), proj_R(A)
    s = fro_scale(A)
    assert L.shape == (A.cols, A.cols) and R.shape == (A.rows, A.rows)
    assert (L @ L - L).norm() <= 1e-12 * s
    assert (L - L.H).norm() <= 1e-12 * s
    assert (R @ R - R).norm() <= 1e-12 * s
    assert (R - R.H).norm() <= 1e-12 * s
    assert (A @ L).norm() <= 1e-12 * s
    assert (R @ A).norm() <= 1e-12 * s


def test_projector_examples():
    assert proj_L(QuatMatrix.eye(3)).allclose(QuatMatrix.zeros(3, 3), atol=1e-15)
    assert proj_L(QuatMatrix.zeros(3, 3)) == QuatMatrix.eye(3)
    assert proj_R(QuatMatrix.zeros(0, 2)).shape == (0, 0)
    assert proj_L(QuatMatrix.zeros(0, 2)) == QuatMatrix.eye(2)


def test_tolerances_validate():
    with pytest.raises(ValueError):
        Tolerances(cond_tol=0)
    with pytest.raises(ValueError):
        Tolerances(rank_rtol=-1)
