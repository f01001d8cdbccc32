"""
Exact arithmetic in Q(sqrt(q)).
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Union

Rational = Union[int, Fraction]


class SqrtQ:
    """
    The number ``a + b*sqrt(q)`` with rational ``a``, ``b``. When ``q`` is a perfect
    square the radical is folded into ``a`` so that ``b == 0``.

    Args:
        a
        b
        q: Positive integer under the radical.
    """

    __slots__ = ("a", "b", "q")

    def __init__(self, a: Rational = 0, b: Rational = 0, q: int = 1):
        if q < 1:
            raise ValueError(f"q must be positive, not {q}")
        a, b = Fraction(a), Fraction(b)
        root = math.isqrt(q)
        if root * root == q:
            a, b = a + b * root, Fraction(0)
        self.a = a
        self.b = b
        self.q = q

    @classmethod
    def sqrt(cls, q: int) -> "SqrtQ":
        return cls(0, 1, q)

    @classmethod
    def q_half_power(cls, q: int, e: int) -> "SqrtQ":
        """``q^(e/2)`` for an integer ``e``."""
        if e % 2 == 0:
            return cls(Fraction(q) ** (e // 2), 0, q)
        return cls(0, Fraction(q) ** ((e - 1) // 2), q)

    def _coerce(self, other) -> "SqrtQ":
        if isinstance(other, SqrtQ):
            if other.q != self.q and other.b and self.b:
                raise ValueError(f"cannot combine sqrt({self.q}) and sqrt({other.q})")
            return other
        if isinstance(other, (int, Fraction)):
            return SqrtQ(other, 0, self.q)
        raise TypeError()

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        q = self.q if self.b else o.q
        return SqrtQ(self.a + o.a, self.b + o.b, q)

    __radd__ = __add__

    def __neg__(self):
        return SqrtQ(-self.a, -self.b, self.q)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        q = self.q if self.b else o.q
        return SqrtQ(
            self.a * o.a + self.b * o.b * q,
            self.a * o.b + self.b * o.a,
            q,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "SqrtQ":
        return SqrtQ(self.a, -self.b, self.q)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.q

    def inverse(self) -> "SqrtQ":
        norm = self.norm()
        if norm == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt(q))")
        return SqrtQ(self.a / norm, -self.b / norm, self.q)

    def __truediv__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inverse()
        result = SqrtQ(1, 0, self.q)
        for _ in range(abs(e)):
            result = result * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, SqrtQ):
            return NotImplemented
        if self.b == 0 and other.b == 0:
            return self.a == other.a
        return (self.a, self.b, self.q) == (other.a, other.b, other.q)

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.q))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.q)

    def is_rational(self) -> bool:
        return self.b == 0

    def to_json(self) -> Dict[str, object]:
        return {"a": str(self.a), "b": str(self.b), "q": self.q, "decimal": float(self)}

    @classmethod
    def from_json(cls, data: Dict[str, object]) -> "SqrtQ":
        return cls(Fraction(data["a"]), Fraction(data["b"]), int(data["q"]))

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        mag = abs(self.b)
        radical = f"{mag}*sqrt({self.q})" if mag != 1 else f"sqrt({self.q})"
        if self.a == 0:
            return radical if self.b > 0 else f"-{radical}"
        return f"{self.a} {'+' if self.b > 0 else '-'} {radical}"

    def __repr__(self):
        return f"SqrtQ({self.a}, {self.b}, q={self.q})"
