from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from condensa.qz import QZ

small = st.integers(-50, 50)
dens = st.integers(1, 24)


def test_reduced_representative():
    x = QZ(5, 4)
    assert (x.num, x.den) == (1, 4)
    assert QZ(-1, 2) == QZ(1, 2)
    assert QZ(3, 3) == 0
    assert str(QZ(6, 8)) == "3/4"
    assert str(QZ(2)) == "0"


@pytest.mark.parametrize("text,expected", [("1/4", QZ(1, 4)), ("-1/3", QZ(2, 3)), ("2", QZ(0)), (7, QZ(0))])
def test_parse(text, expected):
    assert QZ.parse(text) == expected


@pytest.mark.parametrize("bad", [0.5, True, "x/2"])
def test_parse_rejects_inexact(bad):
    with pytest.raises((ValueError, TypeError)):
        QZ.parse(bad)


def test_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        QZ(1, 0)


def test_immutable():
    with pytest.raises(AttributeError):
        QZ(1, 2).num = 3


def test_phases():
    assert [QZ(k, 4).phase() for k in range(4)] == ["1", "i", "-1", "-i"]
    assert QZ(1, 3).phase() == "exp(2πi·1/3)"


@given(small, dens, small, dens, small)
def test_arithmetic_matches_fractions_mod_one(a, b, c, d, n):
    x, y = QZ(a, b), QZ(c, d)
    assert (x + y).fraction == (Fraction(a, b) + Fraction(c, d)) % 1
    assert (x - y).fraction == (Fraction(a, b) - Fraction(c, d)) % 1
    assert (n * x).fraction == (n * Fraction(a, b)) % 1
    assert -(-x) == x
    assert hash(x) == hash(QZ(a + b, b))
