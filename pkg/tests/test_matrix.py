from fractions import Fraction

import pytest

from unitdist.matrix import (
    MatrixFormatError,
    Sign,
    SignMatrix,
    Tolerance,
    ValueMatrix,
    ZeroOneMatrix,
    format_matrix,
    format_rational,
    parse_matrix,
    parse_rational,
    read_matrix,
)


def test_parse_zero_one_with_comments():
    m = parse_matrix("# a comment\n\n2 3 01\n1 0 1\n0 1 0\n")
    assert isinstance(m, ZeroOneMatrix)
    assert m.entries == ((1, 0, 1), (0, 1, 0))
    assert m.ones() == 3


def test_parse_values_exact():
    m = parse_matrix("2 2 VAL\n1/3 0.1\n-2 7/14\n")
    assert m.entries == ((Fraction(1, 3), Fraction(1, 10)), (Fraction(-2), Fraction(1, 2)))


def test_parse_sign():
    m = parse_matrix("1 3 SIGN\n1 + -\n")
    assert m.entries == ((Sign.ONE, Sign.PLUS, Sign.MINUS),)


@pytest.mark.parametrize(
    "text",
    [
        "",
        "2 2\n1 1\n1 1\n",
        "2 2 XX\n1 1\n1 1\n",
        "2 2 01\n1 1\n",
        "2 2 01\n1 1\n1 2\n",
        "1 2 01\n1\n",
        "0 2 01\n",
        "1 1 VAL\nabc\n",
        "1 1 SIGN\n?\n",
    ],
)
def test_parse_rejects_malformed(text):
    with pytest.raises(MatrixFormatError):
        parse_matrix(text)


def test_round_trip_every_kind():
    for m in (
        ZeroOneMatrix([[1, 0], [0, 1]]),
        ValueMatrix([[Fraction(1, 3), 2], [Fraction(-5, 7), 0]]),
        SignMatrix([["1", "+"], ["-", "1"]]),
    ):
        assert parse_matrix(format_matrix(m, comments=["note"])) == m


def test_read_matrix(data_dir):
    m = read_matrix(data_dir / "all_ones_2x2.txt")
    assert m == ZeroOneMatrix([[1, 1], [1, 1]])


def test_rational_formatting():
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(4, 2)) == "2"
    assert parse_rational("1e-3") == Fraction(1, 1000)


def test_ranks_preserve_order():
    m = ValueMatrix([[3, Fraction(1, 2)], [3, 10]])
    assert m.ranks() == [[1, 0], [1, 2]]


def test_integer_scaled():
    m = ValueMatrix([[Fraction(1, 2), Fraction(1, 3)]])
    assert m.integer_scaled() == [[3, 2]]


def test_tolerance_policy():
    tol = Tolerance(Fraction(1, 1000))
    assert tol.is_one(Fraction(1001, 1000))
    assert not tol.is_one(Fraction(1002, 1000))


def test_zero_one_rejects_other_values():
    with pytest.raises(ValueError):
        ZeroOneMatrix([[0, 2]])


def test_row_masks_round_trip():
    m = ZeroOneMatrix([[1, 0, 1], [0, 1, 1]])
    assert ZeroOneMatrix.from_row_masks(m.row_masks(), 3) == m
