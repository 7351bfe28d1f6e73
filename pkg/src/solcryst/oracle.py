"""Brute-force checkers used to validate the closed-form routes.

Nothing here imports the closed-form shortcuts it is checking: torsion is
found by multiplying matrices, conjugacy by searching words, H^1 by running
crossed homomorphisms over the whole cokernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Optional

from .affine import AffineElem, evaluate, format_word
from .cohomology import CocycleClass, eval_crossed, module
from .holonomy import HolonomySpec
from .matz import I2, L, R, SWAP, Mat2Z, Vec2Q, ZERO2, is_admissible


@dataclass(frozen=True)
class Witness:
    word: tuple
    order: int
    central: bool = False  # g^order is a t4-power rather than the identity

    def to_json(self) -> dict:
        return {"word": [[n, str(e)] for n, e in self.word], "order": self.order,
                "text": f"({format_word(self.word)})^{self.order}"}

    def __str__(self):
        return f"({format_word(self.word)})^{self.order}"


def certify(spec, w: Witness) -> bool:
    g = evaluate(w.word, spec.generators) ** w.order
    return g.is_central() if w.central else g.is_identity()


# ---------------------------------------------------------------------------
# Torsion

def _d4_order(X: Mat2Z) -> int:
    k, Y = 1, X
    while Y != I2:
        Y, k = Y @ X, k + 1
    return k


def holonomy_reps(spec) -> dict[Mat2Z, tuple]:
    """A shortest word in alpha, beta for every element of the holonomy group."""
    names = [(name, A) for name, A, _, _ in spec.holonomy.gens]
    reps = {I2: ()}
    frontier = [(I2, ())]
    while frontier:
        nxt = []
        for X, word in frontier:
            for name, A in names:
                Y = X @ A
                if Y not in reps:
                    reps[Y] = word + ((name, 1),)
                    nxt.append((Y, reps[Y]))
        frontier = nxt
    return reps


def _translation_reps(M: Mat2Z, bound: int) -> list[tuple[int, int]]:
    """Representatives of Z^2 / (I - M) Z^2, or a box when that is infinite."""
    D = I2 - M
    if D.det() != 0:
        # residues only; deciding torsion is left to the matrix products
        from .matz import cokernel
        out = [tuple(m) for m in cokernel(D).labels()]
        return sorted(out, key=lambda p: (abs(p[0]) + abs(p[1]), p))
    box = product(range(-bound, bound + 1), repeat=2)
    return sorted(box, key=lambda p: (abs(p[0]) + abs(p[1]), p))


def _check_candidate(spec, n: tuple[int, int, int], h: AffineElem, h_word: tuple, k: int,
                     quotient: bool) -> Optional[Witness]:
    lat = spec.lattice
    # cheap necessary condition on the Sol^3 part before the full product
    M = spec.S ** n[2] @ h.M
    t = Vec2Q.of(n[0], n[1]) + (spec.S ** n[2]) @ h.t
    acc, P = ZERO2, I2
    for _ in range(k):
        acc = acc + P @ t
        P = P @ M
    if P != I2 or acc != ZERO2:
        return None
    g = lat.t1_pow(n[0]) @ lat.t2_pow(n[1]) @ lat.t3_pow(n[2]) @ h
    gk = g ** k
    if not gk.is_central():
        return None
    prefix = tuple((name, e) for name, e in zip(("t1", "t2", "t3"), n) if e != 0)
    c = Fraction(gk.z)
    if quotient:
        return Witness(prefix + h_word, k, central=True)
    if c == 0:
        return Witness(prefix + h_word, k)
    if g.hat == 1:
        u = -c / k * spec.q
        if u.denominator == 1:
            return Witness(prefix + (("t4q", int(u)),) + h_word, k)
    return None


def torsion_search(spec, bound: int = 6, quotient: bool = False, raw: bool = False) -> Optional[Witness]:
    """A word g with g^k = id (or a t4-power when ``quotient``), or None.

    The reduced search fixes n3 to {0, 1} for holonomy that flips t3 and to
    the value killing the log slot otherwise, and runs (n1, n2) over
    translation residues.  ``raw`` searches the whole box |n_i| <= bound.
    """
    reps = holonomy_reps(spec)
    for X, h_word in sorted(reps.items(), key=lambda kv: (len(kv[1]), kv[1])):
        if X == I2:
            continue
        k = _d4_order(X)
        h = evaluate(h_word, spec.generators)
        if raw:
            n3s = range(-bound, bound + 1)
        elif h.sign == -1:
            n3s = (0, 1)
        else:
            if h.log.denominator != 1:
                continue
            n3s = (-int(h.log),)
        for n3 in n3s:
            M = spec.S ** n3 @ h.M
            pairs = (product(range(-bound, bound + 1), repeat=2) if raw
                     else _translation_reps(M, bound))
            for n1, n2 in pairs:
                w = _check_candidate(spec, (n1, n2, n3), h, h_word, k, quotient)
                if w is not None:
                    return w
    return None


# ---------------------------------------------------------------------------
# Weak conjugacy

_LETTERS = {"R": R, "L": L, "r": R.inv(), "l": L.inv(), "s": SWAP}


@lru_cache(maxsize=None)
def word_ball(length: int) -> tuple[tuple[Mat2Z, str], ...]:
    """Every matrix reachable by a word of at most ``length`` letters, with a shortest word."""
    seen = {I2: ""}
    frontier = [I2]
    for _ in range(length):
        nxt = []
        for M in frontier:
            for ch, G in _LETTERS.items():
                N = M @ G
                if N not in seen:
                    seen[N] = seen[M] + ch
                    nxt.append(N)
        frontier = nxt
    return tuple(seen.items())


def word_to_matrix(word: str) -> Mat2Z:
    M = I2
    for ch in word:
        M = M @ _LETTERS[ch]
    return M


def weakly_conjugate_bruteforce(S1: Mat2Z, S2: Mat2Z, word_len: int = 12) -> Optional[Mat2Z]:
    """B with B S1 B^-1 in {S2, S2^-1}, B a word of length <= word_len, or None.

    Meet in the middle: conjugates of S1 by half-length words are matched
    against conjugates of S2 and S2^-1.
    """
    if not (is_admissible(S1) and is_admissible(S2)) or S1.trace() != S2.trace():
        return None
    half = word_len // 2
    ball1 = word_ball(word_len - half)
    ball2 = word_ball(half)
    left = {}
    for B, _ in ball1:
        left.setdefault(B @ S1 @ B.inv(), B)
    for target in (S2, S2.inv()):
        for C, _ in ball2:
            X = C @ target @ C.inv()
            B = left.get(X)
            if B is not None:
                return C.inv() @ B
    return None


def conjugacy_components(matrices: Iterable[Mat2Z], box: int) -> dict[Mat2Z, int]:
    """Component ids of the graph joining S to G S G^-1 (G in R, L, SWAP and
    inverses) and to S^-1, explored inside |entries| <= box."""
    parent: dict[Mat2Z, Mat2Z] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry, key=Mat2Z.flat)] = min(rx, ry, key=Mat2Z.flat)

    gens = list(_LETTERS.values())
    todo = list(matrices)
    for M in todo:
        parent.setdefault(M, M)
    stack = list(todo)
    while stack:
        M = stack.pop()
        for N in [G @ M @ G.inv() for G in gens] + [M.inv()]:
            if max(abs(v) for v in N.flat()) > box:
                continue
            if N not in parent:
                parent[N] = N
                stack.append(N)
            union(M, N)
    roots = {}
    return {M: roots.setdefault(find(M), len(roots)) for M in todo}


# ---------------------------------------------------------------------------
# First cohomology

_RELATORS = {
    "Z2": [[("alpha", 2)]],
    "Z4": [[("alpha", 4)]],
    "Z2xZ2": [[("alpha", 2)], [("beta", 2)], [("alpha", 1), ("beta", 1), ("alpha", -1), ("beta", -1)]],
    "D4": [[("alpha", 2)], [("beta", 2)], [("alpha", 1), ("beta", 1)] * 4],
}


def h1_bruteforce(spec: HolonomySpec) -> tuple[int, list[CocycleClass]]:
    """Class count and the smallest member of each class, over the full grid.

    Every slot is free here; the closed-form route pins some of them.
    """
    if spec.tag == "0":
        return 1, [CocycleClass(ZERO2)]
    E = module(spec)
    names = [g[0] for g in spec.gens]
    act = {name: phi for name, _, _, phi in spec.gens}
    relators = _RELATORS[spec.kind]
    grid = product(E, repeat=len(names))
    Z = [p for p in grid
         if all(eval_crossed(r, dict(zip(names, p)), act)[0] == ZERO2 for r in relators)]
    seen, reps = set(), []
    for p in Z:
        if p in seen:
            continue
        orbit = {tuple((x + (I2 - act[n]) @ v).mod1() for x, n in zip(p, names)) for v in E}
        seen |= orbit
        best = min(orbit)
        reps.append(CocycleClass(*best))
    return len(reps), sorted(reps)


# ---------------------------------------------------------------------------
# Grids

def admissible_matrices(trace_max: int, entry_bound: int, trace_min: int = 3) -> list[Mat2Z]:
    """All S in SL(2,Z) with trace_min <= tr S <= trace_max and |entries| <= entry_bound."""
    out = []
    rng = range(-entry_bound, entry_bound + 1)
    for t in range(trace_min, trace_max + 1):
        for a in rng:
            d = t - a
            if abs(d) > entry_bound:
                continue
            bc = a * d - 1
            for b in rng:
                if b == 0:
                    continue
                if bc % b == 0 and abs(bc // b) <= entry_bound:
                    out.append(Mat2Z(a, b, bc // b, d))
            if bc == 0:
                for c in rng:
                    out.append(Mat2Z(a, 0, c, d))
    return [S for S in out if is_admissible(S)]
