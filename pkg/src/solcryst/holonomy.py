"""Finite holonomy data: subgroups of D4, the extensions Z_Phi, and the
compatibility of each holonomy type with a hyperbolic matrix S.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Optional

from .exact import is_square
from .matz import I2, Mat2Z, decompose_nK, require_admissible

HALF = Fraction(1, 2)
ZERO = Fraction(0)

ID = I2
NEG = Mat2Z(-1, 0, 0, -1)
FLIP = Mat2Z(1, 0, 0, -1)
SWAP = Mat2Z(0, 1, 1, 0)
ROT = Mat2Z(0, 1, -1, 0)

D4_ELEMENTS = (ID, NEG, FLIP, -FLIP, SWAP, -SWAP, ROT, -ROT)

TYPE_TAGS = ("0", "1", "2a", "2b", "3", "3i", "4", "5", "6a", "6ai", "6b", "6bi", "7", "7i")


class IncompatibleType(ValueError):
    pass


class UnknownType(ValueError):
    pass


def normalize_tag(tag: str) -> str:
    t = str(tag).strip()
    if t.upper().startswith("T"):
        t = t[1:]
    if t not in TYPE_TAGS:
        raise UnknownType(f"unknown holonomy type {tag!r}")
    return t


def is_d4(A: Mat2Z) -> bool:
    return A in D4_ELEMENTS


def bar_hat(A: Mat2Z) -> tuple[int, int]:
    """(bar, hat): bar = +1 iff A is diagonal, hat = det A."""
    if not is_d4(A):
        raise ValueError(f"{A} is not in D4")
    return (1 if A.is_diagonal() else -1), A.det()


def element_order(A: Mat2Z) -> int:
    X, k = A, 1
    while X != ID:
        X = X @ A
        k += 1
    return k


# ---------------------------------------------------------------------------
# Static lists

@dataclass(frozen=True)
class Subgroup:
    label: str
    name: str
    generators: tuple[Mat2Z, ...]

    def elements(self) -> frozenset:
        out = {ID}
        frontier = [ID]
        while frontier:
            x = frontier.pop()
            for g in self.generators:
                y = x @ g
                if y not in out:
                    out.add(y)
                    frontier.append(y)
        return frozenset(out)


@dataclass(frozen=True)
class Template:
    """One row of the list of extensions Z_Phi."""

    subgroup: str
    offsets: tuple[Fraction, ...]
    liftable: bool
    types: tuple[str, ...]


SUBGROUPS = (
    Subgroup("0", "trivial", ()),
    Subgroup("1", "Z2", (FLIP,)),
    Subgroup("2", "Z2", (NEG,)),
    Subgroup("3", "Z2", (SWAP,)),
    Subgroup("4", "Z4", (ROT,)),
    Subgroup("5", "Z2xZ2", (NEG, FLIP)),
    Subgroup("6", "Z2xZ2", (SWAP, NEG)),
    Subgroup("7", "D4", (SWAP, FLIP)),
)

TEMPLATES = (
    Template("0", (), True, ("0",)),
    Template("1", (ZERO,), False, ()),
    Template("1", (HALF,), True, ("1",)),
    Template("2", (ZERO,), True, ("2a",)),
    Template("2", (HALF,), True, ("2b",)),
    Template("3", (ZERO,), True, ("3", "3i")),
    Template("4", (ZERO,), True, ("4",)),
    # offsets for the pair (-I, diag(1,-1))
    Template("5", (ZERO, ZERO), False, ()),
    Template("5", (ZERO, HALF), True, ("5",)),
    Template("5", (HALF, ZERO), False, ()),
    Template("6", (ZERO, ZERO), True, ("6a", "6ai")),
    Template("6", (ZERO, HALF), True, ("6b", "6bi")),
    Template("7", (ZERO, ZERO), False, ()),
    Template("7", (ZERO, HALF), True, ("7", "7i")),
)


def list_subgroups() -> tuple[Subgroup, ...]:
    return SUBGROUPS


def list_types() -> tuple[Template, ...]:
    return TEMPLATES


# ---------------------------------------------------------------------------
# Holonomy specs

@dataclass(frozen=True)
class HolonomySpec:
    tag: str
    S: Mat2Z
    A: Optional[Mat2Z] = None
    B: Optional[Mat2Z] = None
    a3: Fraction = ZERO
    b3: Fraction = ZERO
    phi_alpha: Optional[Mat2Z] = None
    phi_beta: Optional[Mat2Z] = None
    K_data: Optional[tuple[int, Mat2Z]] = None
    boundary: tuple[str, ...] = field(default=())

    @property
    def kind(self) -> str:
        return {"0": "trivial", "4": "Z4", "7": "D4", "7i": "D4"}.get(
            self.tag, "Z2xZ2" if self.B is not None else "Z2")

    @property
    def gens(self) -> list[tuple[str, Mat2Z, Fraction, Mat2Z]]:
        out = []
        if self.A is not None:
            out.append(("alpha", self.A, self.a3, self.phi_alpha))
        if self.B is not None:
            out.append(("beta", self.B, self.b3, self.phi_beta))
        return out

    def holonomy_elements(self) -> frozenset:
        return Subgroup("", "", tuple(g[1] for g in self.gens)).elements()

    @property
    def orientable(self) -> bool:
        return all(M.is_diagonal() for M in self.holonomy_elements())

    def to_json(self) -> dict:
        f = lambda M: None if M is None else M.flat()
        out = {"type": self.tag, "A": f(self.A), "B": f(self.B),
               "a3": str(self.a3), "b3": str(self.b3),
               "phi_alpha": f(self.phi_alpha), "phi_beta": f(self.phi_beta)}
        if self.K_data:
            out["n"], out["K"] = self.K_data[0], self.K_data[1].flat()
        if self.boundary:
            out["boundary"] = list(self.boundary)
        return out


def _t3_cond(S: Mat2Z) -> bool:
    s11, s12, s21, s22 = S.flat()
    return s12 == -s21 and s22 > 0 and s11 < 0


def _t3i_cond(S: Mat2Z) -> bool:
    s11, s12, s21, s22 = S.flat()
    return s11 == s22 and min(S.flat()) > 0


def _t4_cond(S: Mat2Z) -> bool:
    s11, s12, s21, s22 = S.flat()
    return s12 == s21 and s11 > 0 and s22 > 0


def compatible(tag: str, S: Mat2Z) -> Optional[HolonomySpec]:
    """The abstract kernel of type ``tag`` over S, or None when S does not admit it."""
    require_admissible(S)
    tag = normalize_tag(tag)
    if tag == "0":
        return HolonomySpec("0", S)
    if tag == "2a":
        return HolonomySpec("2a", S, NEG, phi_alpha=NEG)
    if tag == "3":
        return HolonomySpec("3", S, SWAP, phi_alpha=SWAP) if _t3_cond(S) else None
    if tag == "3i":
        return HolonomySpec("3i", S, SWAP, phi_alpha=FLIP) if _t3i_cond(S) else None
    if tag == "4":
        return HolonomySpec("4", S, ROT, phi_alpha=ROT) if _t4_cond(S) else None
    if tag == "6a":
        return HolonomySpec("6a", S, SWAP, NEG, phi_alpha=SWAP, phi_beta=NEG) if _t3_cond(S) else None
    if tag == "6ai":
        return HolonomySpec("6ai", S, SWAP, NEG, phi_alpha=FLIP, phi_beta=NEG) if _t3i_cond(S) else None

    if tag in ("1", "5", "7", "7i"):
        nk = decompose_nK(S, +1)
    else:
        nk = decompose_nK(S, -1)
    if nk is None:
        return None
    n, K = nk
    k11, k12, k21, k22 = K.flat()
    if tag == "1":
        return HolonomySpec("1", S, FLIP, a3=HALF, phi_alpha=-K, K_data=nk)
    if tag == "2b":
        return HolonomySpec("2b", S, NEG, a3=HALF, phi_alpha=-K, K_data=nk)
    if tag == "5":
        return HolonomySpec("5", S, FLIP, NEG, a3=HALF, phi_alpha=-K, phi_beta=NEG, K_data=nk)
    if tag == "6b":
        if not (k12 == -k21 and k22 > 0 and k11 <= 0):
            return None
        flags = ("k11 = 0",) if k11 == 0 else ()
        return HolonomySpec("6b", S, SWAP, NEG, b3=HALF, phi_alpha=SWAP, phi_beta=-K,
                            K_data=nk, boundary=flags)
    if tag == "6bi":
        if not (k11 == k22 and min(K.flat()) >= 0):
            return None
        return HolonomySpec("6bi", S, SWAP, NEG, b3=HALF, phi_alpha=FLIP, phi_beta=-K, K_data=nk)
    if tag == "7":
        if not (k12 == -k21 and k22 >= 0 and k11 < 0 and _t3_cond(S)):
            return None
        return HolonomySpec("7", S, SWAP, FLIP, b3=HALF, phi_alpha=SWAP, phi_beta=-K, K_data=nk)
    if tag == "7i":
        if not (k11 == k22 and min(K.flat()) >= 0):
            return None
        return HolonomySpec("7i", S, SWAP, FLIP, b3=HALF, phi_alpha=FLIP, phi_beta=-K, K_data=nk)
    raise AssertionError(tag)


def compatible_types(S: Mat2Z) -> list[HolonomySpec]:
    return [h for h in (compatible(t, S) for t in TYPE_TAGS) if h is not None]


# ---------------------------------------------------------------------------
# Homomorphism check on Z_Phi

def _zphi_mul(x, y):
    # Z_Phi sits in R x| D4 with D4 acting on R through bar.
    (u, A), (v, B) = x, y
    return (u + bar_hat(A)[0] * v, A @ B)


def _zphi_inv(x):
    u, A = x
    Ai = A.inv()
    return (-bar_hat(Ai)[0] * u, Ai)


def _zphi_relators(spec: HolonomySpec) -> list[list[tuple[str, int]]]:
    rels: list[list[tuple[str, int]]] = []
    names = [g[0] for g in spec.gens]
    for nm, A, _, _ in spec.gens:
        rels.append([(nm, 1), ("t3", 1), (nm, -1)])
        rels.append([(nm, element_order(A))])
    if spec.kind == "Z2xZ2":
        rels.append([("alpha", 1), ("beta", 1), ("alpha", -1), ("beta", -1)])
    if spec.kind == "D4":
        rels.append([("alpha", 1), ("beta", 1)] * 4)
    return rels


def check_homomorphism(spec: HolonomySpec) -> bool:
    """Every relator of Z_Phi maps to a valid identity in GL(2,Z)."""
    S = spec.S
    source = {"t3": (Fraction(1), ID)}
    target = {"t3": S}
    for nm, A, off, phi in spec.gens:
        source[nm] = (off, A)
        target[nm] = phi
    for word in _zphi_relators(spec):
        x, img = (Fraction(0), ID), ID
        for nm, e in word:
            g = source[nm] if e > 0 else _zphi_inv(source[nm])
            for _ in range(abs(e)):
                x = _zphi_mul(x, g)
                img = img @ (target[nm] if e > 0 else target[nm].inv())
        u, A = x
        if A != ID or u.denominator != 1:
            return False
        if img != S ** int(u):
            return False
    return True


# ---------------------------------------------------------------------------
# Liftability barrier

def integral_commuting_involution(S: Mat2Z) -> Optional[Mat2Z]:
    """An integer X with X^2 = I, det X = -1 and XS = SX, if one exists.

    Such X is +/-(2S - T I)/sqrt(T^2 - 4), so it needs T^2 - 4 to be a square.
    """
    T = S.trace()
    disc = T * T - 4
    if not is_square(disc):
        return None
    r = isqrt(disc)
    X = S.scale(2) - I2.scale(T)
    if r == 0 or any(v % r for v in X.flat()):
        return None
    return Mat2Z(*(v // r for v in X.flat()))


def involution_search(S: Mat2Z, bound: int) -> Optional[Mat2Z]:
    """Brute-force version of :func:`integral_commuting_involution`."""
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            for c in range(-bound, bound + 1):
                # X^2 = I with det -1 forces trace 0
                X = Mat2Z(a, b, c, -a)
                if X.det() == -1 and X @ S == S @ X:
                    return X
    return None


def dagger_rejected(template: Template, S: Mat2Z) -> bool:
    """Every non-liftable template needs a diagonal flip with offset 0 acting
    trivially on t3, i.e. an integral commuting involution of det -1."""
    require_admissible(S)
    if template.liftable:
        raise ValueError("template is liftable")
    return integral_commuting_involution(S) is None
