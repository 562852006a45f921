"""Exact residues in Q/Z."""
from __future__ import annotations

from fractions import Fraction
from math import gcd


class QZ:
    """A rational number modulo 1, kept in reduced form with 0 <= value < 1."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        if isinstance(num, Fraction):
            num, den = num.numerator * 1, num.denominator * den
        if den == 0:
            raise ZeroDivisionError("QZ denominator is zero")
        if den < 0:
            num, den = -num, -den
        num %= den
        g = gcd(num, den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", den // g)

    def __setattr__(self, name, value):
        raise AttributeError("QZ is immutable")

    @classmethod
    def parse(cls, text) -> "QZ":
        """Accept ``"a/b"``, ``"a"`` or an int; floats are refused."""
        if isinstance(text, QZ):
            return text
        if isinstance(text, bool) or isinstance(text, float):
            raise ValueError(f"Q/Z value must be exact, got {text!r}")
        if isinstance(text, int):
            return cls(text, 1)
        s = str(text).strip()
        if "/" in s:
            a, b = s.split("/", 1)
            return cls(int(a), int(b))
        return cls(int(s), 1)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __add__(self, other):
        other = _coerce(other)
        return QZ(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return QZ(self.num * other.den - other.num * self.den, self.den * other.den)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return QZ(-self.num, self.den)

    def __mul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return QZ(self.num * n, self.den)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = QZ(other)
        if not isinstance(other, QZ):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __lt__(self, other):
        return self.fraction < _coerce(other).fraction

    def __bool__(self):
        return self.num != 0

    def __str__(self):
        return "0" if self.num == 0 else f"{self.num}/{self.den}"

    def __repr__(self):
        return f"QZ({self.num}, {self.den})"

    def phase(self) -> str:
        """Root of unity exp(2 pi i x) written exactly when it is a 4th root."""
        table = {(0, 1): "1", (1, 4): "i", (1, 2): "-1", (3, 4): "-i"}
        return table.get((self.num, self.den), f"exp(2πi·{self})")


def _coerce(x) -> QZ:
    if isinstance(x, QZ):
        return x
    if isinstance(x, int):
        return QZ(x)
    raise TypeError(f"cannot combine QZ with {type(x).__name__}")


ZERO = QZ(0)
