"""Exact affine matrices for Sol1^4 extended by D4.

An element is stored in block form::

    [ A  r12 r13  0  z ]
    [ 0     M     0  t ]      M: 2x2 integer block, t: translation (x, y)
    [ 0  0   0    s  l ]      s = +/-1, l = multiple of ln(lambda)
    [ 0  0   0    0  1 ]

``A`` is +/-1 (the character det A), ``r`` is a rational row vector and only
the corner ``z`` can be irrational.  The log slot never mixes with anything
else, so ln(lambda) stays a formal symbol.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .exact import QuadExt, demote, rat_str
from .matz import I2, Mat2Z, Vec2Q, ZERO2

Scalar = Union[Fraction, QuadExt]


class ContextMismatch(ValueError):
    """Elements built over different lattices were combined."""


class NotInLatticeSpan(ValueError):
    pass


_ZERO = Fraction(0)
_ONE = Fraction(1)


def _dot(r: tuple[Fraction, Fraction], v) -> Fraction:
    return r[0] * v[0] + r[1] * v[1]


def _row_times(r: tuple[Fraction, Fraction], M: Mat2Z) -> tuple[Fraction, Fraction]:
    return (r[0] * M.s11 + r[1] * M.s21, r[0] * M.s12 + r[1] * M.s22)


@dataclass(frozen=True, slots=True)
class AffineElem:
    hat: int
    r: tuple[Fraction, Fraction]
    z: Scalar
    M: Mat2Z
    t: Vec2Q
    sign: int
    log: Fraction
    ctx: Optional[tuple] = None

    @classmethod
    def identity(cls, ctx=None) -> "AffineElem":
        return cls(1, (_ZERO, _ZERO), _ZERO, I2, ZERO2, 1, _ZERO, ctx)

    @classmethod
    def make(cls, hat=1, r=(0, 0), z=0, M=I2, t=(0, 0), sign=1, log=0, ctx=None) -> "AffineElem":
        return cls(int(hat), (Fraction(r[0]), Fraction(r[1])), demote(z), M,
                   Vec2Q.of(*t), int(sign), Fraction(log), ctx)

    def _ctx_with(self, other: "AffineElem"):
        if self.ctx is None:
            return other.ctx
        if other.ctx is not None and other.ctx != self.ctx:
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
        return self.ctx

    def __matmul__(self, h: "AffineElem") -> "AffineElem":
        ctx = self._ctx_with(h)
        A = self.hat
        rh = _row_times(self.r, h.M)
        r = (A * h.r[0] + rh[0], A * h.r[1] + rh[1])
        z = demote(h.z * A + _dot(self.r, h.t) + self.z)
        t = self.M @ h.t + self.t
        return AffineElem(A * h.hat, r, z, self.M @ h.M, t,
                          self.sign * h.sign, self.sign * h.log + self.log, ctx)

    __mul__ = __matmul__

    def inv(self) -> "AffineElem":
        A = self.hat
        Mi = self.M.inv()
        t_inv = -(Mi @ self.t)
        rMi = _row_times(self.r, Mi)
        r = (-A * rMi[0], -A * rMi[1])
        z = demote((self.z + _dot(self.r, t_inv)) * (-A))
        return AffineElem(A, r, z, Mi, t_inv, self.sign, -self.sign * self.log, self.ctx)

    def __pow__(self, n: int) -> "AffineElem":
        if n == 1:
            return self
        if n == 0:
            return AffineElem.identity(self.ctx)
        base = self if n > 0 else self.inv()
        out = None
        # square-and-multiply keeps long power relations cheap
        k = abs(n)
        while True:
            if k & 1:
                out = base if out is None else out @ base
            k >>= 1
            if not k:
                return out
            base = base @ base

    def conj(self, h: "AffineElem") -> "AffineElem":
        """self * h * self^-1"""
        return self @ h @ self.inv()

    def is_identity(self) -> bool:
        return (self.hat == 1 and self.r == (_ZERO, _ZERO) and self.z == 0 and self.M == I2
                and self.t == ZERO2 and self.sign == 1 and self.log == 0)

    def is_central(self) -> bool:
        """Pure t4-power: everything trivial except the corner."""
        return (self.hat == 1 and self.r == (_ZERO, _ZERO) and self.M == I2
                and self.t == ZERO2 and self.sign == 1 and self.log == 0)

    def same_as(self, other: "AffineElem") -> bool:
        return (self.hat, self.r, self.z, self.M, self.t, self.sign, self.log) == (
            other.hat, other.r, other.z, other.M, other.t, other.sign, other.log)

    def grid(self) -> list[list[str]]:
        """5x5 entries as strings; the log slot carries a ln(lambda) annotation."""
        f = lambda v: str(v) if isinstance(v, QuadExt) else rat_str(v)
        lg = "0" if self.log == 0 else f"{rat_str(self.log)}*ln(lambda)"
        return [
            [str(self.hat), f(self.r[0]), f(self.r[1]), "0", f(self.z)],
            ["0", str(self.M.s11), str(self.M.s12), "0", f(self.t.x)],
            ["0", str(self.M.s21), str(self.M.s22), "0", f(self.t.y)],
            ["0", "0", "0", str(self.sign), lg],
            ["0", "0", "0", "0", "1"],
        ]

    def __str__(self):
        rows = self.grid()
        width = max(len(x) for row in rows for x in row)
        return "\n".join("[ " + "  ".join(x.rjust(width) for x in row) + " ]" for row in rows)


def evaluate(word: Iterable[tuple[str, int]], gens: dict[str, AffineElem],
             ctx=None) -> AffineElem:
    """Multiply out a word given as (generator name, exponent) pairs."""
    out = None
    for name, e in word:
        g = gens[name] ** e
        out = g if out is None else out @ g
    return AffineElem.identity(ctx) if out is None else out


def format_word(word: Sequence[tuple[str, int]]) -> str:
    parts = []
    for name, e in word:
        parts.append(name if e == 1 else f"{name}^{e}")
    return " ".join(parts) if parts else "id"


@dataclass(frozen=True)
class Relation:
    """``lhs == t1^n1 t2^n2 t3^n3 t4^n4``; ``element`` is lhs multiplied out."""

    lhs: str
    word: tuple
    n1: int
    n2: int
    n3: Fraction
    n4: Scalar
    element: AffineElem
    group: str = ""

    @property
    def exponents(self) -> tuple:
        return (self.n1, self.n2, self.n3, self.n4)

    def rhs_text(self) -> str:
        parts = []
        for name, e in (("t1", self.n1), ("t2", self.n2), ("t3", self.n3), ("t4", self.n4)):
            if e == 0:
                continue
            text = str(e)
            if e == 1:
                parts.append(name)
            elif text.lstrip("-").isdigit():
                parts.append(f"{name}^{text}")
            else:
                parts.append(f"{name}^({text})")
        return " ".join(parts) if parts else "id"

    def __str__(self):
        return f"{self.lhs} = {self.rhs_text()}"


def decompose(g: AffineElem, lattice) -> Optional[tuple[int, int, int, Scalar]]:
    """Exponents (n1, n2, n3, n4) with g = t1^n1 t2^n2 t3^n3 t4^n4, or None.

    ``lattice`` supplies ``S``, ``t1_pow``, ``t2_pow`` and ``t3_pow``.
    """
    if g.sign != 1 or g.hat != 1 or g.log.denominator != 1:
        return None
    n3 = int(g.log)
    if g.M != lattice.S ** n3:
        return None
    h = g @ lattice.t3_pow(-n3)
    if not h.t.is_integral():
        return None
    n1, n2 = int(h.t.x), int(h.t.y)
    rest = lattice.t2_pow(-n2) @ lattice.t1_pow(-n1) @ h
    if not rest.is_central():
        return None
    return n1, n2, n3, rest.z


def decompose_strict(g: AffineElem, lattice) -> tuple[int, int, int, Scalar]:
    out = decompose(g, lattice)
    if out is None:
        raise NotInLatticeSpan(f"element is not a lattice element:\n{g}")
    return out


def relation(lhs: str, word, gens: dict[str, AffineElem], lattice, group: str = "") -> Relation:
    element = evaluate(word, gens)
    n1, n2, n3, n4 = decompose_strict(element, lattice)
    return Relation(lhs, tuple(word), n1, n2, Fraction(n3), n4, element, group)


def relation_holds(rel: Relation, gens: dict[str, AffineElem], lattice) -> bool:
    """Re-evaluate both sides of ``rel`` with the given generators."""
    lhs = evaluate(rel.word, gens)
    rhs = lattice.element(rel.n1, rel.n2, int(rel.n3), rel.n4)
    return lhs.same_as(rhs)


@dataclass(frozen=True)
class RelationCheck:
    relation: Relation
    ok: bool
    residual: Optional[AffineElem] = None


def verify_relations(relations: Iterable[Relation], gens: dict[str, AffineElem],
                     lattice) -> list[RelationCheck]:
    out = []
    for rel in relations:
        lhs = evaluate(rel.word, gens)
        rhs = lattice.element(rel.n1, rel.n2, int(rel.n3), rel.n4)
        if lhs.same_as(rhs):
            out.append(RelationCheck(rel, True))
        else:
            out.append(RelationCheck(rel, False, rhs.inv() @ lhs))
    return out


def verify_presentation(spec, relations: Optional[Iterable[Relation]] = None) -> list[RelationCheck]:
    """Check every relation of a crystallographic group as a matrix identity.

    With ``relations`` given, they are checked against ``spec``'s generators,
    which is how a stale or corrupted presentation shows up.
    """
    if relations is None:
        relations = spec.presentation()
    return verify_relations(relations, spec.generators, spec.lattice)
