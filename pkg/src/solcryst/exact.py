"""Exact rationals and elements of a real quadratic field Q(sqrt d).

Rationals are plain :class:`fractions.Fraction` values.  :class:`QuadExt`
stores ``a + b*sqrt(d)`` with ``d`` square-free; purely rational values carry
the sentinel ``d = 1``.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Union

Rat = Fraction
Number = Union[int, Fraction, "QuadExt"]


class MixedFields(ValueError):
    """Raised when combining irrational values from different fields."""


def rat(value) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-3/4"`` to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as a rational")


def rat_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(f, d)`` with ``n == f*f*d`` and ``d`` square-free."""
    if n < 1:
        raise ValueError("expected a positive integer")
    f, d = 1, 1
    rest = n
    p = 2
    while p * p <= rest:
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        f *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1 if p == 2 else 2
    return f, d * rest


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


class QuadExt:
    """An element ``a + b*sqrt(d)`` of a real quadratic field.

    Values are immutable and always normalized: ``d`` is square-free, and a
    zero radical part forces ``d = 1``.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 1):
        a, b = rat(a), rat(b)
        if d < 0:
            raise ValueError("radicand must be non-negative")
        if d == 0:
            b = Fraction(0)
        if b == 0 or d == 1:
            if d == 1 and b:
                a += b
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", Fraction(0))
            object.__setattr__(self, "d", 1)
            return
        f, sq = squarefree_split(d)
        b *= f
        if sq == 1:
            a, b = a + b, Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", sq if b else 1)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    # -- construction helpers -------------------------------------------------
    @classmethod
    def sqrt(cls, n: int) -> "QuadExt":
        """The positive square root of a non-negative integer."""
        if n < 0:
            raise ValueError("negative radicand")
        return cls(0, 1, n) if n else cls(0)

    @staticmethod
    def lift(x: Number) -> "QuadExt":
        return x if isinstance(x, QuadExt) else QuadExt(rat(x))

    def is_rational(self) -> bool:
        return self.b == 0

    def as_rational(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is irrational")
        return self.a

    def conjugate(self) -> "QuadExt":
        return _make(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    # -- arithmetic -----------------------------------------------------------
    def _common(self, other: "QuadExt") -> int:
        if self.b == 0:
            return other.d
        if other.b == 0 or other.d == self.d:
            return self.d
        raise MixedFields(f"sqrt({self.d}) and sqrt({other.d}) do not mix")

    def __add__(self, other):
        if not isinstance(other, QuadExt):
            if isinstance(other, (int, Fraction)):
                return _make(self.a + other, self.b, self.d)
            return NotImplemented
        d = self._common(other)
        return _make(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self):
        return _make(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if not isinstance(other, QuadExt):
            if isinstance(other, (int, Fraction)):
                return _make(self.a * other, self.b * other, self.d)
            return NotImplemented
        d = self._common(other)
        a = self.a * other.a + self.b * other.b * d
        b = self.a * other.b + self.b * other.a
        return _make(a, b, d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt d)")
        return _make(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(sqrt d)")
            return _make(self.a / other, self.b / other, self.d)
        if isinstance(other, QuadExt):
            self._common(other)
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        out = QuadExt(1)
        for _ in range(abs(n)):
            out = out * base
        return out

    # -- comparison -----------------------------------------------------------
    def sign(self) -> int:
        """Exact sign of ``a + b*sqrt(d)``, decided by squaring."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0 or sa == sb:
            return sa if sa else sb
        if sa == 0:
            return sb
        return sa if self.a * self.a > self.b * self.b * self.d else sb

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadExt):
            return self.a == other.a and self.b == other.b and self.d == other.d
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    # -- display / serialization ---------------------------------------------
    def __repr__(self):
        return f"QuadExt({rat_str(self.a)!r}, {rat_str(self.b)!r}, {self.d})"

    def __str__(self):
        if self.b == 0:
            return rat_str(self.a)
        rad = f"sqrt({self.d})"
        b = self.b
        mag = rat_str(abs(b))
        term = rad if abs(b) == 1 else f"{mag}*{rad}"
        if self.a == 0:
            return term if b > 0 else f"-{term}"
        return f"{rat_str(self.a)} {'+' if b > 0 else '-'} {term}"

    def to_json(self) -> dict:
        return {"a": rat_str(self.a), "b": rat_str(self.b), "d": self.d}

    @classmethod
    def from_json(cls, obj: dict) -> "QuadExt":
        return cls(rat(obj["a"]), rat(obj["b"]), int(obj["d"]))


def _make(a: Fraction, b: Fraction, d: int) -> QuadExt:
    # Fast path for already-normalized parts.
    q = object.__new__(QuadExt)
    if b == 0:
        d = 1
        b = Fraction(0)
    object.__setattr__(q, "a", Fraction(a))
    object.__setattr__(q, "b", Fraction(b))
    object.__setattr__(q, "d", d)
    return q


def quad_normalize(a, b, d_raw: int) -> QuadExt:
    """Rewrite ``a + b*sqrt(d_raw)`` with a square-free radicand."""
    if d_raw < 1:
        raise ValueError("d_raw must be >= 1")
    return QuadExt(a, b, d_raw)


def quad_arith(x: Number, y: Number, op: str) -> QuadExt:
    x, y = QuadExt.lift(x), QuadExt.lift(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def demote(x: Number) -> Union[Fraction, QuadExt]:
    """Return a Fraction when ``x`` is rational, else ``x`` unchanged."""
    if isinstance(x, QuadExt):
        return x.a if x.b == 0 else x
    return rat(x)


def to_json_number(x: Number):
    return QuadExt.lift(x).to_json()
