import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quatsylv import ParseError, QuatMatrix, format_qmat, format_qsys, parse_qmat, parse_qsys
from quatsylv.generate import generate

from conftest import ALL_KINDS, quat_matrices

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


@given(quat_matrices(max_dim=4, elements=finite))
def test_qmat_round_trip_is_exact(A):
    B = parse_qmat(format_qmat(A))
    assert B.shape == A.shape
    assert np.array_equal(B.components, A.components + 0.0)


def test_qmat_layout():
    A = QuatMatrix([[[1, 0.5, -2, 0], [0, 0, 0, 1e-300]]])
    assert format_qmat(A) == "1 2\n1 0.5 -2 0  0 0 0 1e-300\n"


def test_negative_zero_is_written_as_zero():
    assert format_qmat(QuatMatrix([[[-0.0, 0, 0, 0]]])) == "1 1\n0 0 0 0\n"


def test_zero_column_matrix():
    A = QuatMatrix.zeros(2, 0)
    text = format_qmat(A)
    assert text == "2 0\n-\n-\n"
    assert parse_qmat(text).shape == (2, 0)
    assert parse_qmat("0 3\n").shape == (0, 3)


def test_comments_and_blank_lines():
    A = parse_qmat("# header\n\n1 1   # one by one\n 1 2 3 4\n\n")
    assert tuple(A[0, 0]) == (1, 2, 3, 4)


@pytest.mark.parametrize(
    "text, line, col",
    [
        ("1 1\n1 2 x 4\n", 2, 5),
        ("2 1\n1 2 3 4\n", 3, 1),
        ("1 1\n1 2 3\n", 2, 6),
        ("1 1\n1 2 3 4 5\n", 2, 9),
        ("1\n", 1, 1),
        ("1 -1\n", 1, 3),
        ("1 1\n1 2 3 4\n9\n", 3, 1),
        ("1 1\n1 2 inf 4\n", 2, 5),
    ],
)
def test_qmat_errors_have_positions(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_qmat(text, source="m.qmat")
    assert (info.value.line, info.value.column) == (line, col)
    assert str(info.value).startswith(f"m.qmat:{line}:{col}:")


@pytest.mark.parametrize("kind", ALL_KINDS + ("chain",))
def test_qsys_round_trip(kind):
    sys, _ = generate(kind, 2, 3)
    again = parse_qsys(format_qsys(sys))
    assert again.kind == sys.kind and type(again) is type(sys)
    assert all(again[k] == v for k, v in sys.coeffs.items())
    assert format_qsys(again) == format_qsys(sys)


def test_qsys_errors():
    good = format_qsys(generate("sys01", 1, 0)[0])
    cases = {
        "": (1, 1),
        "sys99\n": (1, 1),
        "sys01 extra\n": (1, 7),
        "sys01\nA1\n1 1\n0 0 0 0\n": (2, 1),
        good + "A1:\n1 1\n0 0 0 0\n": (None, None),
        good.replace("C4:", "D4:"): (None, None),
    }
    for text, (line, col) in cases.items():
        with pytest.raises(ParseError) as info:
            parse_qsys(text)
        if line is not None:
            assert (info.value.line, info.value.column) == (line, col)


def test_qsys_shape_errors_are_parse_errors():
    sys, _ = generate("sys01", 2, 0)
    text = format_qsys(sys.replace(C1=QuatMatrix.zeros(2, 2)))
    bad = text.replace("C1:\n2 2", "C1:\n1 2", 1)
    bad = bad.replace("C1:\n1 2\n0 0 0 0  0 0 0 0\n0 0 0 0  0 0 0 0\n", "C1:\n1 2\n0 0 0 0  0 0 0 0\n")
    with pytest.raises(ParseError) as info:
        parse_qsys(bad)
    assert info.value.line == 1
