"""Crystallographic groups of Sol1^4 (and their Sol^3 quotients).

A group is the lattice plus one or two holonomy generators

    alpha = t1^a1 t2^a2 t4^a4 (t3^a3, A),    beta = t1^b1 t2^b2 t4^b4 (t3^b3, B).

Relations are never transcribed: they come from multiplying the affine
matrices and decomposing the product back into t-exponents.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property, lru_cache
from math import floor, lcm
from typing import Optional, Sequence

from .affine import AffineElem, Relation, decompose, evaluate, relation, verify_presentation
from .cohomology import CocycleClass, h1_classes
from .holonomy import FLIP, HolonomySpec, IncompatibleType, compatible, normalize_tag
from .lattice import LatticeSpec
from .matz import Mat2Z, Vec2Q, ZERO2


class InflationRequired(Exception):
    """The requested central refinement q is too coarse for this group."""

    def __init__(self, min_q: int, detail: str = ""):
        super().__init__(f"q must be inflated to {min_q}" + (f" ({detail})" if detail else ""))
        self.min_q = min_q


class HasTorsion(ValueError):
    pass


# Which central parameter each type carries, the word whose t4-exponent
# fixes it, and that exponent's slope in the parameter.
CENTRAL_MENUS = {
    "2a": ("a4", (("alpha", 2),), 2),
    "2b": ("a4", (("alpha", 2),), 2),
    "4": ("a4", (("alpha", 4),), 4),
    "5": ("b4", (("beta", 2),), 2),
    "6a": ("b4", (("beta", 2),), 2),
    "6ai": ("b4", (("beta", 2),), 2),
    "6b": ("b4", (("beta", 2),), 2),
    "6bi": ("b4", (("beta", 2),), 2),
    "7": ("b4", (("beta", 1), ("alpha", 1)) * 4, 4),
    "7i": ("b4", (("beta", 1), ("alpha", 1)) * 4, 4),
}


def holonomy_element(lattice: LatticeSpec, A: Mat2Z, phi: Mat2Z, offset: Fraction,
                     trans: Vec2Q, center: Fraction) -> AffineElem:
    """t1^x t2^y t4^center composed with the pure holonomy part (t3^offset, A)."""
    bar = 1 if A.is_diagonal() else -1
    H = AffineElem(A.det(), (Fraction(0), Fraction(0)), offset * lattice.c3, phi,
                   ZERO2, bar, Fraction(offset), lattice.ctx)
    return lattice.t1_pow(trans.x) @ lattice.t2_pow(trans.y) @ lattice.t4_pow(center) @ H


@dataclass(frozen=True)
class CrystGroupSpec:
    lattice: LatticeSpec
    holonomy: HolonomySpec
    cls: CocycleClass
    a4: Fraction = Fraction(0)
    b4: Fraction = Fraction(0)
    j: Optional[int] = None
    is_sol3_only: bool = False

    @property
    def tag(self) -> str:
        return self.holonomy.tag

    @property
    def S(self) -> Mat2Z:
        return self.lattice.S

    @property
    def q(self) -> int:
        return self.lattice.q

    @cached_property
    def generators(self) -> dict[str, AffineElem]:
        gens = self.lattice.generators()
        hol = self.holonomy
        if hol.A is not None:
            gens["alpha"] = holonomy_element(self.lattice, hol.A, hol.phi_alpha, hol.a3,
                                             self.cls.a, self.a4)
        if hol.B is not None:
            gens["beta"] = holonomy_element(self.lattice, hol.B, hol.phi_beta, hol.b3,
                                            self.cls.b or ZERO2, self.b4)
        return gens

    def holonomy_names(self) -> list[str]:
        return [name for name, *_ in self.holonomy.gens]

    def evaluate(self, word) -> AffineElem:
        return evaluate(word, self.generators)

    @cached_property
    def relations(self) -> tuple[Relation, ...]:
        gens = self.generators
        return tuple(relation(name, word, gens, self.lattice, grp)
                     for name, word, grp in presentation_words(self.holonomy))

    def presentation(self) -> list[Relation]:
        return list(self.relations)

    def label(self) -> str:
        parts = [f"T{self.tag}", f"S=[{self.S}]", f"q={self.q}", f"m={self.lattice.m}",
                 str(self.cls)]
        if self.tag in CENTRAL_MENUS:
            parts.append(f"{CENTRAL_MENUS[self.tag][0]}={self.central_value} (j={self.j})")
        if self.lattice.c3:
            parts.append(f"c3={self.lattice.c3}")
        return " ".join(parts)

    @property
    def central_value(self) -> Fraction:
        if self.tag not in CENTRAL_MENUS:
            return Fraction(0)
        return self.a4 if CENTRAL_MENUS[self.tag][0] == "a4" else self.b4

    def with_central(self, value: Fraction, j: Optional[int] = None) -> "CrystGroupSpec":
        if self.tag not in CENTRAL_MENUS:
            raise ValueError(f"type {self.tag} has no central parameter")
        key = CENTRAL_MENUS[self.tag][0]
        return replace(self, j=j, **{key: Fraction(value)})

    def to_json(self) -> dict:
        return {
            "type": self.tag,
            "lattice": self.lattice.to_json(),
            "class": self.cls.to_json(),
            "a4": str(self.a4),
            "b4": str(self.b4),
            "j": self.j,
        }


# ---------------------------------------------------------------------------
# Presentations

def _conj(g: str, t: str) -> tuple:
    return ((g, 1), (t, 1), (g, -1))


def presentation_words(hol: HolonomySpec) -> list[tuple[str, tuple, str]]:
    """(name, word, group) for every relation, in the customary order."""
    from .lattice import LATTICE_WORDS

    out = [(name, word, "lattice") for name, word in LATTICE_WORDS]
    sym = {"alpha": "a", "beta": "b"}
    for g, A, _, _ in hol.gens:
        s = sym[g]
        for t in ("t1", "t2", "t3", "t4"):
            out.append((f"{s} {t} {s}^-1", _conj(g, t), g))
        order = 4 if A.trace() == 0 and A.det() == 1 else 2
        out.append((f"{s}^{order}", ((g, order),), g))
    if hol.kind == "Z2xZ2":
        out.append(("[a,b]", (("alpha", 1), ("beta", 1), ("alpha", -1), ("beta", -1)), "mixed"))
    if hol.kind == "D4":
        out.append(("(a b)^4", (("alpha", 1), ("beta", 1)) * 4, "mixed"))
        out.append(("(b a)^4", (("beta", 1), ("alpha", 1)) * 4, "mixed"))
    return out


def presentation(spec: CrystGroupSpec) -> list[Relation]:
    return list(spec.relations)


def sol3_relations(relations: Sequence[Relation]) -> list[Relation]:
    """The Sol^3 quotient: every t4-component replaced by the identity."""
    return [replace(r, n4=Fraction(0)) for r in relations
            if all(name != "t4" for name, _ in r.word)]


def word_t4_exponent(spec: CrystGroupSpec, word) -> Fraction:
    g = spec.evaluate(word)
    dec = decompose(g, spec.lattice)
    if dec is None:
        raise ValueError(f"word {word} does not land in the lattice")
    return Fraction(dec[3])


# ---------------------------------------------------------------------------
# Central parameter menus

def _mod_unit(x: Fraction, unit: Fraction) -> Fraction:
    return x - floor(x / unit) * unit


MENU_RELATION = {"2a": "a^2", "2b": "a^2", "4": "a^4", "5": "b^2", "6a": "b^2", "6ai": "b^2",
                 "6b": "b^2", "6bi": "b^2", "7": "(b a)^4", "7i": "(b a)^4"}
C3_RELATION = "a t3 a^-1"


@dataclass(frozen=True)
class ExponentModel:
    """Every relation's t4-exponent as base + dv * value + dc * c3.

    Exponents are affine in the central parameter (a4 or b4) and in c3,
    since those only ever enter the additive corner slot.
    """

    names: tuple[str, ...]
    base: tuple[Fraction, ...]
    dv: tuple[Fraction, ...]
    dc: tuple[Fraction, ...]

    def at(self, value, c3) -> list[Fraction]:
        return [b + v * value + c * c3 for b, v, c in zip(self.base, self.dv, self.dc)]

    def index(self, name: str) -> int:
        return self.names.index(name)


@lru_cache(maxsize=4096)
def exponent_model(lattice: LatticeSpec, hol: HolonomySpec, cls: CocycleClass) -> ExponentModel:
    lat0 = lattice.with_(c3=0)
    g0 = CrystGroupSpec(lat0, hol, cls)
    base = [Fraction(r.n4) for r in g0.relations]
    names = tuple(r.lhs for r in g0.relations)
    if hol.tag in CENTRAL_MENUS:
        dv = [Fraction(r.n4) - b for r, b in zip(g0.with_central(Fraction(1)).relations, base)]
    else:
        dv = [Fraction(0)] * len(base)
    if hol.tag == "4":
        g1 = CrystGroupSpec(lat0.with_(c3=1), hol, cls)
        dc = [Fraction(r.n4) - b for r, b in zip(g1.relations, base)]
    else:
        dc = [Fraction(0)] * len(base)
    return ExponentModel(names, tuple(base), tuple(dv), tuple(dc))


def _menus(model: ExponentModel, tag: str, q: int, c3_only=None) -> list[tuple[Fraction, Fraction, Optional[int]]]:
    """(c3, central value, j) triples at refinement q."""
    unit = Fraction(1, q)
    if tag == "4":
        k = model.index(C3_RELATION)
        d0, slope = model.base[k], model.dc[k]
        c3s = sorted({_mod_unit((target - d0) / slope, unit) for target in (Fraction(0), unit)})
    else:
        c3s = [Fraction(0)]
    if c3_only is not None:
        c3s = [c3_only]
    out = []
    for c3 in c3s:
        if tag not in CENTRAL_MENUS:
            out.append((c3, Fraction(0), None))
            continue
        k = model.index(MENU_RELATION[tag])
        e0 = model.base[k] + model.dc[k] * c3
        p = model.dv[k]
        if p != CENTRAL_MENUS[tag][2]:
            raise AssertionError(f"slope {p} for type {tag}")
        vals = sorted((_mod_unit((Fraction(i, q) - e0) / p, unit), i) for i in range(int(p)))
        out.extend((c3, v, i) for v, i in vals)
    return out


def central_menu(lattice: LatticeSpec, hol: HolonomySpec, cls: CocycleClass) -> list[tuple[Fraction, Optional[int]]]:
    """Admissible values of a4/b4 as (value, j), ascending in value.

    Value j/q is the t4-exponent of the type's power relation (alpha^2,
    alpha^4, beta^2 or (beta alpha)^4) before the value is reduced mod 1/q.
    """
    model = exponent_model(lattice, hol, cls)
    return [(v, j) for _, v, j in _menus(model, hol.tag, lattice.q, c3_only=lattice.c3)]


def c3_menu(lattice: LatticeSpec, hol: HolonomySpec, cls: CocycleClass) -> list[Fraction]:
    """The c3 values making alpha t3 alpha^-1 carry t4^0 or t4^(1/q) (Z4 only)."""
    model = exponent_model(lattice, hol, cls)
    return sorted({c3 for c3, _, _ in _menus(model, hol.tag, lattice.q)})


# ---------------------------------------------------------------------------
# Enumeration

def _relations_fit(spec: CrystGroupSpec) -> bool:
    q = spec.q
    return all((Fraction(r.n4) * q).denominator == 1 for r in spec.relations)


@lru_cache(maxsize=4096)
def _class_groups(lattice: LatticeSpec, hol: HolonomySpec, cls: CocycleClass) -> tuple[CrystGroupSpec, ...]:
    model = exponent_model(lattice, hol, cls)
    out = []
    for c3, value, j in _menus(model, hol.tag, lattice.q):
        spec = CrystGroupSpec(lattice.with_(c3=c3), hol, cls, j=j)
        if hol.tag in CENTRAL_MENUS:
            spec = spec.with_central(value, j)
        out.append(spec)
    return tuple(out)


def inflated(lattice: LatticeSpec, new_q: int) -> LatticeSpec:
    """The same lattice with the finer center t4^(1/new_q): m scales with q,
    so t1, t2, t3 are unchanged."""
    if new_q % lattice.q:
        raise ValueError("new q must be a multiple of the old one")
    k = new_q // lattice.q
    return LatticeSpec(lattice.S, new_q, (lattice.m[0] * k, lattice.m[1] * k), lattice.c3,
                       canonicalize=False)


@lru_cache(maxsize=4096)
def required_q(lattice: LatticeSpec, hol: HolonomySpec, cls: CocycleClass, max_factor: int = 64) -> int:
    """Smallest multiple k*q at which every relation of every group in the
    class has its t4-exponent in (1/kq)Z."""
    model = exponent_model(lattice, hol, cls)
    for k in range(1, max_factor + 1):
        Q = lattice.q * k
        if all((e * Q).denominator == 1
               for c3, v, _ in _menus(model, hol.tag, Q) for e in model.at(v, c3)):
            return Q
    raise InflationRequired(0, f"no refinement up to {max_factor}x found")


def enumerate_class(lattice: LatticeSpec, hol: HolonomySpec, cls: CocycleClass) -> list[CrystGroupSpec]:
    groups = list(_class_groups(lattice, hol, cls))
    if not all(_relations_fit(g) for g in groups):
        raise InflationRequired(required_q(lattice, hol, cls), f"class {cls}")
    return groups


def _order_key(g: CrystGroupSpec):
    return (g.cls, g.a4, g.b4, g.lattice.c3)


def enumerate_groups(S: Mat2Z, tag: str, q: int = 1, m=(0, 0)) -> list[CrystGroupSpec]:
    """All groups of one type over the lattice (S; q, m), ordered by (class, a4, b4, c3).

    Raises InflationRequired with the smallest sufficient q when any class
    needs a finer center.
    """
    hol = compatible(tag, S)
    if hol is None:
        raise IncompatibleType(f"type {normalize_tag(tag)} is not compatible with {S}")
    lattice = LatticeSpec(S, q, m)
    out, need = [], []
    for cls in h1_classes(hol):
        try:
            out.extend(enumerate_class(lattice, hol, cls))
        except InflationRequired as exc:
            need.append(exc.min_q)
    if need:
        raise InflationRequired(lcm(*need))
    return sorted(out, key=_order_key)


@dataclass(frozen=True)
class ClassFamily:
    cls: CocycleClass
    min_q: int
    groups: tuple


def enumerate_by_class(S: Mat2Z, tag: str, q: int = 1, m=(0, 0), auto_inflate: bool = True) -> list[ClassFamily]:
    """Per cohomology class: the smallest admissible multiple of q and its groups.

    Without ``auto_inflate`` a class that needs a finer center raises.
    """
    hol = compatible(tag, S)
    if hol is None:
        raise IncompatibleType(f"type {normalize_tag(tag)} is not compatible with {S}")
    base = LatticeSpec(S, q, m)
    out = []
    for cls in h1_classes(hol):
        need = required_q(base, hol, cls)
        if need != q and not auto_inflate:
            raise InflationRequired(need, f"class {cls}")
        groups = enumerate_class(inflated(base, need), hol, cls)
        out.append(ClassFamily(cls, need, tuple(sorted(groups, key=_order_key))))
    return out


# ---------------------------------------------------------------------------
# Torsion

def _coset(x: Fraction, values: set) -> bool:
    return _mod_unit(x, Fraction(1)) in values


def _half_odd_family(num: int, den: int) -> set:
    """{ num*(2n+1)/(2*den) mod 1 : n in Z }"""
    if den == 0:
        return set()
    return {_mod_unit(Fraction(num * (2 * n + 1), 2 * den), Fraction(1)) for n in range(2 * abs(den))}


@dataclass(frozen=True)
class TorsionReport:
    torsion_free: bool
    criterion_used: str
    witness: Optional[object] = None
    sol3: bool = False

    def to_json(self) -> dict:
        return {"torsion_free": self.torsion_free, "criterion": self.criterion_used,
                "witness": None if self.witness is None else self.witness.to_json()}


# The coset of -I (when it has integral log) carries order-2 candidates
# (t1^n1 t2^n2 t4^u h)^2 = t4^(n1 n2 + n1 x1 + n2 x2 + e + 2u), where
# h t_i h^-1 = t_i^-1 t4^(x_i) and h^2 = t4^e.
CENTRAL_INVOLUTION = {
    "2a": (("alpha", 1),),
    "4": (("alpha", 2),),
    "5": (("beta", 1),),
    "6ai": (("beta", 1),),
    "7i": (("alpha", 1), ("beta", 1)) * 2,
}


def central_involution_free(spec: CrystGroupSpec) -> bool:
    """No element of the -I coset has finite order."""
    h = CENTRAL_INVOLUTION[spec.tag]
    q = spec.q
    x = []
    for t in ("t1", "t2"):
        word = h + ((t, 1),) + tuple((n, -e) for n, e in reversed(h))
        x.append(word_t4_exponent(spec, word) * q)
    e = word_t4_exponent(spec, h * 2) * q
    if any(v.denominator != 1 for v in x + [e]):
        raise InflationRequired(required_q(spec.lattice, spec.holonomy, spec.cls))
    return q % 2 == 0 and e % 2 == 1 and x[0] % 2 == 0 and x[1] % 2 == 0


def torsion_verdict(spec: CrystGroupSpec) -> tuple[bool, bool, str]:
    """Closed-form (Pi torsion free, Q torsion free, criterion tag)."""
    t = spec.tag
    S = spec.S
    s11, s12, s21, s22 = S.flat()
    a = spec.cls.a
    half = Fraction(1, 2)
    j = spec.j
    inv = "no torsion in the -I coset (q even, h^2 = t4^(odd/q), h t_i h^-1 = t_i^-1 t4^(even/q))"
    if t in ("0", "1", "2b"):
        return True, True, f"T{t}: always torsion free"
    if t in ("3", "6a", "6b", "7"):
        return False, False, f"T{t}: never torsion free"
    if t in ("2a", "4", "5"):
        return central_involution_free(spec), False, f"T{t}: {inv}"
    if t == "3i":
        ok = a.x == half and not _coset(a.y, _half_odd_family(s11 + 1, s12))
        return ok, ok, "T3i: a1 = 1/2 and a2 avoids (s11+1)(2n+1)/(2 s12)"
    if t == "6ai":
        b = spec.cls.b
        ok = (a.x == half and _mod_unit(a.y - b.y - half, Fraction(1)) == 0
              and not _coset(b.x - half, _half_odd_family(s12, s11 - 1))
              and not _coset(b.y - half, _half_odd_family(s11 + 1, s12)))
        return ok and central_involution_free(spec), False, (
            f"T6ai: a1 = 1/2, a2 = b2 + 1/2, b1 and b2 avoid their families, {inv}")
    n, K = spec.holonomy.K_data
    k11, k12, k21, k22 = K.flat()
    if t == "6bi":
        ok = a.x == half and not _coset(a.y, _half_odd_family(k11 - 1, k12))
        return ok, ok, "T6bi: a1 = 1/2 and a2 avoids (k11-1)(2n+1)/(2 k12)"
    if t == "7i":
        allowed = {_mod_unit(Fraction(-(k21 + 1), 2 * k11) + Fraction(i, k11), Fraction(1))
                   for i in range(k11)}
        ok = a.x == half and _coset(a.y, allowed)
        return ok and central_involution_free(spec), False, (
            f"T7i: a1 = 1/2, a2 in -(k21+1)/(2 k11) + Z/k11, {inv}")
    raise AssertionError(t)


def is_torsion_free(spec: CrystGroupSpec, find_witness: bool = True) -> TorsionReport:
    free, _, why = torsion_verdict(spec)
    witness = None
    if not free and find_witness:
        from .oracle import torsion_search
        witness = torsion_search(spec)
    return TorsionReport(free, why, witness)


def quotient_is_torsion_free(spec: CrystGroupSpec, find_witness: bool = True) -> TorsionReport:
    _, free, why = torsion_verdict(spec)
    witness = None
    if not free and find_witness:
        from .oracle import torsion_search
        witness = torsion_search(spec, quotient=True)
    return TorsionReport(free, why, witness, sol3=True)


# ---------------------------------------------------------------------------
# Sol^3 quotients: structure and topology

@dataclass(frozen=True)
class CaseA:
    """Z^2 x|_M Z for a hyperbolic M."""
    matrix: Mat2Z


@dataclass(frozen=True)
class CaseB:
    """Index-2 extension of a case A group, glued from two Klein-bottle pieces."""
    subgroup_type: str
    subgroup_matrix: Mat2Z


@dataclass(frozen=True)
class MappingTorus:
    matrix: Mat2Z


@dataclass(frozen=True)
class AffineInvolution:
    translation: Vec2Q
    matrix: Mat2Z

    def is_involution(self) -> bool:
        return self.matrix @ self.matrix == Mat2Z.identity()


@dataclass(frozen=True)
class TwistedIBundleUnion:
    first: AffineInvolution
    second: AffineInvolution


@dataclass(frozen=True)
class TopologyDescriptor:
    kind: object
    orientable: bool

    def to_json(self) -> dict:
        k = self.kind
        if isinstance(k, MappingTorus):
            body = {"kind": "MappingTorus", "matrix": k.matrix.flat()}
        elif isinstance(k, TwistedIBundleUnion):
            body = {"kind": "TwistedIBundleUnion",
                    "involutions": [[[str(i.translation.x), str(i.translation.y)], i.matrix.flat()]
                                    for i in (k.first, k.second)]}
        else:
            body = {"kind": None}
        body["orientable"] = self.orientable
        return body


def classify_sol3_group(spec: CrystGroupSpec):
    if not torsion_verdict(spec)[1]:
        raise HasTorsion(f"the Sol^3 quotient of {spec.label()} has torsion")
    t = spec.tag
    if t == "0":
        return CaseA(spec.S)
    if t in ("1", "2b"):
        return CaseA(spec.holonomy.phi_alpha)
    if t == "3i":
        return CaseB("0", spec.S)
    if t == "6bi":
        return CaseB("2b", spec.holonomy.phi_beta)
    raise AssertionError(t)


def topology(spec: CrystGroupSpec, require_free: bool = True) -> TopologyDescriptor:
    orientable = spec.holonomy.orientable
    t = spec.tag
    if require_free and not torsion_verdict(spec)[1]:
        raise HasTorsion(f"the Sol^3 quotient of {spec.label()} has torsion")
    a = spec.cls.a
    if t == "0":
        kind = MappingTorus(spec.S)
    elif t in ("1", "2b"):
        kind = MappingTorus(spec.holonomy.phi_alpha)
    elif t == "3i":
        kind = TwistedIBundleUnion(AffineInvolution(a, FLIP), AffineInvolution(a, spec.S @ FLIP))
    elif t == "6bi":
        kind = TwistedIBundleUnion(AffineInvolution(a, FLIP),
                                   AffineInvolution(a, spec.holonomy.phi_beta @ FLIP))
    else:
        kind = None
    return TopologyDescriptor(kind, orientable)


def orientable(spec_or_hol) -> bool:
    hol = spec_or_hol.holonomy if isinstance(spec_or_hol, CrystGroupSpec) else spec_or_hol
    return hol.orientable


def verify(spec: CrystGroupSpec):
    return verify_presentation(spec)
