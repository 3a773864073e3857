"""Exact quadratic scalars a + b*r over the rationals.

``Scalar2`` realizes Q(sqrt 2) and ``ZOmega`` realizes Q(omega) with
omega^2 = -1 - omega, a primitive cube root of unity.
"""
from __future__ import annotations

from fractions import Fraction


class _Quadratic:
    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        if isinstance(a, _Quadratic):
            a, b = a.a, a.b + b
        self.a = Fraction(a)
        self.b = Fraction(b)

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, (int, Fraction)):
            return type(self)(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return type(self)(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return type(self)(-self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return type(self)(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __rmul__(self, other):
        return self * other

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((type(self).__name__, self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self!r} is not rational")
        return self.a

    def is_integral(self) -> bool:
        return self.b == 0 and self.a.denominator == 1


class Scalar2(_Quadratic):
    """a + b*sqrt(2)."""

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    def inverse(self) -> "Scalar2":
        n = self.a * self.a - 2 * self.b * self.b
        return Scalar2(self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        return self * o.inverse()

    def __repr__(self):
        return f"Scalar2({self.a}, {self.b})"


SQRT2 = Scalar2(0, 1)


class ZOmega(_Quadratic):
    """a + b*omega with omega^2 = -1 - omega."""

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        # (a + b w)(c + d w) = ac + (ad + bc) w + bd w^2, w^2 = -1 - w
        bd = self.b * o.b
        return ZOmega(self.a * o.a - bd, self.a * o.b + self.b * o.a - bd)

    def conjugate(self) -> "ZOmega":
        # omega -> omega^2 = -1 - omega
        return ZOmega(self.a - self.b, -self.b)

    def inverse(self) -> "ZOmega":
        c = self.conjugate()
        n = (self * c).to_fraction()
        return ZOmega(c.a / n, c.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        return self * o.inverse()

    def __repr__(self):
        return f"ZOmega({self.a}, {self.b})"


OMEGA = ZOmega(0, 1)


def root_of_unity_power(m: int, k: int):
    """zeta^k for the fixed primitive m-th root of unity (m in 1, 2, 3)."""
    k %= m
    if m == 1 or k == 0:
        return 1
    if m == 2:
        return -1
    return OMEGA if k == 1 else OMEGA * OMEGA
