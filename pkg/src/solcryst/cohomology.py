"""First cohomology of the holonomy group with coefficients in Coker(I - S).

The translation parts of alpha (and beta) are read off as a pair of vectors
a, b in (I - S)^-1 Z^2 / Z^2.  ``h1_classes`` follows the per-type cocycle
systems; some slots are pinned to zero because a half power of t3 in the
generator lets one conjugate that translation part away.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .holonomy import HolonomySpec, IncompatibleType, compatible
from .matz import I2, Mat2Z, Vec2Q, ZERO2, cokernel

# Types whose alpha slot (resp. beta slot) is pinned to zero.
ALPHA_PINNED = {"1", "2b", "5"}
BETA_PINNED = {"6b", "6bi", "7", "7i"}


class NotACocycle(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CocycleClass:
    a: Vec2Q
    b: Optional[Vec2Q] = None

    def to_json(self) -> dict:
        f = lambda v: None if v is None else [str(v.x), str(v.y)]
        return {"a": f(self.a), "b": f(self.b)}

    def __str__(self):
        if self.b is None:
            return f"a={self.a}"
        return f"a={self.a}, b={self.b}"


def _red(v) -> Vec2Q:
    return Vec2Q.of(*v).mod1()


def _zero(v) -> bool:
    return _red(v) == ZERO2


def module(spec: HolonomySpec) -> list[Vec2Q]:
    return cokernel(I2 - spec.S).elements


def _pref(v: Vec2Q) -> tuple:
    # prefer representatives supported on the first coordinate
    return (v.y, v.x)


def _class_key(c: CocycleClass) -> tuple:
    return _pref(c.a) + (_pref(c.b) if c.b is not None else ())


def cocycles(spec: HolonomySpec) -> list[CocycleClass]:
    """All cocycles on the slice allowed by the type's conventions."""
    if spec.tag == "0":
        return [CocycleClass(ZERO2)]
    E = module(spec)
    pa, pb = spec.phi_alpha, spec.phi_beta
    if spec.B is None:
        if spec.tag in ALPHA_PINNED:
            return [CocycleClass(ZERO2)]
        if spec.kind == "Z4":
            return [CocycleClass(a) for a in E]
        return [CocycleClass(a) for a in E if _zero((I2 + pa) @ a)]
    if spec.tag in ALPHA_PINNED:
        return [CocycleClass(ZERO2, b) for b in E
                if _zero((I2 + pb) @ b) and _zero((I2 - pa) @ b)]
    if spec.tag in BETA_PINNED:
        out = []
        for a in E:
            if not _zero((I2 + pa) @ a):
                continue
            if spec.kind == "Z2xZ2" and not _zero((I2 - pb) @ a):
                continue
            out.append(CocycleClass(a, ZERO2))
        return out
    out = []
    for a in E:
        if not _zero((I2 + pa) @ a):
            continue
        for b in E:
            if _zero((I2 + pb) @ b) and _red((I2 - pa) @ b) == _red((I2 - pb) @ a):
                out.append(CocycleClass(a, b))
    return out


def coboundary_moves(spec: HolonomySpec) -> list[tuple[Vec2Q, Optional[Vec2Q], Vec2Q]]:
    """(da, db, v): the shifts produced by each admissible v."""
    if spec.tag == "0":
        return [(ZERO2, None, ZERO2)]
    E = module(spec)
    pa, pb = spec.phi_alpha, spec.phi_beta
    out = []
    for v in E:
        if spec.tag in ALPHA_PINNED and not _zero((I2 - pa) @ v):
            continue
        if spec.tag in BETA_PINNED and not _zero((I2 - pb) @ v):
            continue
        da = _red((I2 - pa) @ v)
        db = None if pb is None else _red((I2 - pb) @ v)
        out.append((da, db, v))
    return out


def _shift(c: CocycleClass, da: Vec2Q, db: Optional[Vec2Q]) -> CocycleClass:
    a = _red(c.a + da)
    b = None if c.b is None else _red(c.b + db)
    return CocycleClass(a, b)


def h1_classes(spec: HolonomySpec, S: Optional[Mat2Z] = None) -> list[CocycleClass]:
    """One representative per class, in ascending order."""
    if S is not None and S != spec.S:
        raise IncompatibleType("spec was built for a different S")
    moves = coboundary_moves(spec)
    seen: set = set()
    reps = []
    for c in cocycles(spec):
        if c in seen:
            continue
        orbit = {_shift(c, da, db) for da, db, _ in moves}
        seen |= orbit
        reps.append(min(orbit, key=_class_key))
    return sorted(reps)


def is_cocycle(spec: HolonomySpec, c: CocycleClass) -> bool:
    c = CocycleClass(_red(c.a), None if c.b is None else _red(c.b))
    return c in set(cocycles(spec))


def is_coboundary(spec: HolonomySpec, S: Mat2Z, candidate: CocycleClass) -> tuple[bool, Optional[Vec2Q]]:
    """Whether candidate is the coboundary of some v; returns (verdict, v)."""
    if not is_cocycle(spec, candidate):
        raise NotACocycle(str(candidate))
    target = CocycleClass(_red(candidate.a), None if candidate.b is None else _red(candidate.b))
    for da, db, v in coboundary_moves(spec):
        if CocycleClass(da, db) == target:
            return True, v
    return False, None


def h1_for(tag: str, S: Mat2Z) -> list[CocycleClass]:
    spec = compatible(tag, S)
    if spec is None:
        raise IncompatibleType(f"type {tag} is not compatible with {S}")
    return h1_classes(spec)


# ---------------------------------------------------------------------------
# Crossed homomorphisms evaluated on words (shared by the oracle)

def eval_crossed(word: Iterable[tuple[str, int]], values: dict[str, Vec2Q],
                 action: dict[str, Mat2Z]) -> tuple[Vec2Q, Mat2Z]:
    """Value of eta on a word, using eta(gh) = eta(g) + g.eta(h)."""
    val, M = ZERO2, I2
    for name, e in word:
        g_val, g_act = values[name], action[name]
        if e < 0:
            g_act = g_act.inv()
            g_val = -(g_act @ g_val)
        for _ in range(abs(e)):
            val = val + M @ g_val
            M = M @ g_act
    return _red(val), M
