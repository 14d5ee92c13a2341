"""Exact arithmetic in quadratic fields Q(sqrt(q))."""
from __future__ import annotations

from fractions import Fraction
from math import isqrt


class QSqrt:
    """The number ``a + b*sqrt(q)`` with rational ``a``, ``b`` and fixed square-free ``q``."""

    __slots__ = ("a", "b", "q")

    def __init__(self, a=0, b=0, q: int = 5):
        if q < 2 or isqrt(q) ** 2 == q:
            raise ValueError(f"q must be a non-square integer > 1, got {q}")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.q = q

    @classmethod
    def golden(cls) -> "QSqrt":
        """(1 + sqrt 5) / 2."""
        return cls(Fraction(1, 2), Fraction(1, 2), 5)

    def _coerce(self, other) -> "QSqrt":
        if isinstance(other, QSqrt):
            if other.q != self.q:
                raise ValueError(f"mixing Q(sqrt {self.q}) and Q(sqrt {other.q})")
            return other
        if isinstance(other, (int, Fraction)):
            return QSqrt(other, 0, self.q)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QSqrt(self.a + o.a, self.b + o.b, self.q)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt(-self.a, -self.b, self.q)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QSqrt(self.a - o.a, self.b - o.b, self.q)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QSqrt(self.a * o.a + self.q * self.b * o.b, self.a * o.b + self.b * o.a, self.q)

    __rmul__ = __mul__

    def conjugate(self) -> "QSqrt":
        return QSqrt(self.a, -self.b, self.q)

    def norm(self) -> Fraction:
        return self.a * self.a - self.q * self.b * self.b

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in QSqrt")
        num = self * o.conjugate()
        return QSqrt(num.a / n, num.b / n, self.q)

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with q b^2
        diff = self.a * self.a - self.q * self.b * self.b
        return sa if diff > 0 else -sa

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.q))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * self.q ** 0.5

    def __repr__(self):
        return f"QSqrt({self.a}, {self.b}, q={self.q})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}*sqrt({self.q})"


def sign(x) -> int:
    """Exact sign of an int, Fraction or QSqrt."""
    if isinstance(x, QSqrt):
        return x.sign()
    return (x > 0) - (x < 0)
