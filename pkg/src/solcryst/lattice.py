"""Lattices of Sol^3 and Sol1^4 and their generator matrices.

A Sol1^4 lattice is fixed by an admissible S, a central refinement q, a label
m = (m1, m2) and the central slot c3 of t3.  The generators live in the frame
where the hyperbolic block is already diagonalized, so every entry is
rational except the constants c1, c2 reported for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable

from .affine import AffineElem, Relation, relation
from .exact import QuadExt, demote, rat, rat_str
from .matz import I2, Mat2Z, Vec2Q, cokernel, require_admissible


@dataclass(frozen=True)
class EigenData:
    T: int
    lam: QuadExt
    sqrt_disc: QuadExt

    def check(self) -> bool:
        return (self.lam > 1 and self.lam * self.lam.conjugate() == 1
                and self.lam + self.lam.inverse() == self.T)


def eigen_data(S: Mat2Z) -> EigenData:
    require_admissible(S)
    T = S.trace()
    root = QuadExt.sqrt(T * T - 4)
    return EigenData(T, (root + T) / 2, root)


def label_group(S: Mat2Z):
    """The group of labels m; m and m - (S^T - I) z give the same lattice."""
    return cokernel(S.transpose() - I2)


def canonical_m(S: Mat2Z, m) -> tuple[int, int]:
    return label_group(S).canonical_label(m)


def m_labels(S: Mat2Z) -> list[tuple[int, int]]:
    return label_group(S).labels()


def corner_constants(S: Mat2Z, q: int, m) -> tuple[Fraction, Fraction]:
    """Corner entries of t1 and t2.

    Forced by t3 t1 t3^-1 = t1^s11 t2^s21 t4^(m1/q) and the analogous t2
    relation, which reduce to (I - S^T) c = (s11 s21 / 2 + m1/q, s12 s22 / 2 + m2/q).
    """
    s11, s12, s21, s22 = S.flat()
    rhs = (Fraction(s11 * s21, 2) + Fraction(m[0], q), Fraction(s12 * s22, 2) + Fraction(m[1], q))
    c = (I2 - S.transpose()).solve(rhs)
    return c.x, c.y


LATTICE_WORDS = (
    ("[t1,t2]", (("t1", 1), ("t2", 1), ("t1", -1), ("t2", -1))),
    ("t3 t1 t3^-1", (("t3", 1), ("t1", 1), ("t3", -1))),
    ("t3 t2 t3^-1", (("t3", 1), ("t2", 1), ("t3", -1))),
)


@dataclass(frozen=True)
class LatticeSpec:
    S: Mat2Z
    q: int = 1
    m: tuple[int, int] = (0, 0)
    c3: Fraction = Fraction(0)
    canonicalize: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        require_admissible(self.S)
        if self.q < 1:
            raise ValueError("q must be a positive integer")
        m = (int(self.m[0]), int(self.m[1]))
        if self.canonicalize:
            m = canonical_m(self.S, m)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "c3", rat(self.c3) if not isinstance(self.c3, Fraction) else self.c3)

    def with_(self, **kw) -> "LatticeSpec":
        data = dict(S=self.S, q=self.q, m=self.m, c3=self.c3)
        data.update(kw)
        return LatticeSpec(**data)

    @property
    def ctx(self) -> tuple:
        return (tuple(self.S.flat()), self.q, self.m, self.c3)

    @property
    def is_standard(self) -> bool:
        return self.c3 == 0

    @cached_property
    def eigen(self) -> EigenData:
        return eigen_data(self.S)

    @cached_property
    def corners(self) -> tuple[Fraction, Fraction]:
        return corner_constants(self.S, self.q, self.m)

    # -- generators -----------------------------------------------------------
    def t1_pow(self, x) -> AffineElem:
        x = Fraction(x)
        return AffineElem(1, (Fraction(0), x / 2), demote(x * self.corners[0]), I2,
                          Vec2Q(x, Fraction(0)), 1, Fraction(0), self.ctx)

    def t2_pow(self, y) -> AffineElem:
        y = Fraction(y)
        return AffineElem(1, (-y / 2, Fraction(0)), demote(y * self.corners[1]), I2,
                          Vec2Q(Fraction(0), y), 1, Fraction(0), self.ctx)

    def t3_pow(self, k: int) -> AffineElem:
        return AffineElem(1, (Fraction(0), Fraction(0)), demote(k * self.c3), self.S ** k,
                          Vec2Q(Fraction(0), Fraction(0)), 1, Fraction(k), self.ctx)

    def t4_pow(self, w) -> AffineElem:
        return AffineElem(1, (Fraction(0), Fraction(0)), demote(w), I2,
                          Vec2Q(Fraction(0), Fraction(0)), 1, Fraction(0), self.ctx)

    def element(self, n1: int, n2: int, n3: int, n4) -> AffineElem:
        return self.t1_pow(n1) @ self.t2_pow(n2) @ self.t3_pow(n3) @ self.t4_pow(n4)

    def generators(self) -> dict[str, AffineElem]:
        return {"t1": self.t1_pow(1), "t2": self.t2_pow(1), "t3": self.t3_pow(1),
                "t4": self.t4_pow(1), "t4q": self.t4_pow(Fraction(1, self.q))}

    def identity(self) -> AffineElem:
        return AffineElem.identity(self.ctx)

    def relations(self) -> list[Relation]:
        g = self.generators()
        return [relation(name, word, g, self, "lattice") for name, word in LATTICE_WORDS]

    def to_json(self) -> dict:
        return {"S": self.S.flat(), "q": self.q, "m": list(self.m), "c3": rat_str(self.c3)}


def solve_c1c2(spec: LatticeSpec) -> tuple[QuadExt, QuadExt]:
    """The central constants c1, c2 in the original (undiagonalized) frame.

    They differ from the corner entries of t1, t2 by s21 / (2 sqrt(T^2-4)) and
    -s12 / (2 sqrt(T^2-4)) respectively.
    """
    c1p, c2p = spec.corners
    root = spec.eigen.sqrt_disc
    _, s12, s21, _ = spec.S.flat()
    c1 = QuadExt.lift(c1p) + root.inverse() * Fraction(s21, 2)
    c2 = QuadExt.lift(c2p) - root.inverse() * Fraction(s12, 2)
    return c1, c2


def lattice_generators(spec: LatticeSpec) -> tuple[AffineElem, AffineElem, AffineElem, AffineElem]:
    g = spec.generators()
    return g["t1"], g["t2"], g["t3"], g["t4q"]


def minimal_q(relations: Iterable[Relation]) -> int:
    """Smallest q with every t4-exponent in (1/q)Z (exponents from a q = 1 build)."""
    q = 1
    for rel in relations:
        n4 = rel.n4
        if isinstance(n4, QuadExt):
            n4 = n4.as_rational()
        q = lcm(q, Fraction(n4).denominator)
    return q
