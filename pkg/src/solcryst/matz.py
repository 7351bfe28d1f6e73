"""2x2 integer matrices: Smith form, cokernels, and conjugacy of hyperbolic
elements of SL(2,Z) through cyclic words in R = [[1,1],[0,1]], L = [[1,0],[1,1]].
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterable, NamedTuple, Optional

from .exact import is_square


class NotAdmissible(ValueError):
    """Matrix is not in SL(2,Z) with trace > 2."""


class SingularMatrix(ValueError):
    pass


class Vec2Q(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "Vec2Q":
        return cls(Fraction(x), Fraction(y))

    def mod1(self) -> "Vec2Q":
        return Vec2Q(self.x - (self.x.numerator // self.x.denominator),
                     self.y - (self.y.numerator // self.y.denominator))

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def __add__(self, other):  # type: ignore[override]
        return Vec2Q(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Vec2Q(self.x - other[0], self.y - other[1])

    def __neg__(self):
        return Vec2Q(-self.x, -self.y)

    def scale(self, k) -> "Vec2Q":
        return Vec2Q(self.x * k, self.y * k)

    def __str__(self):
        return f"({self.x}, {self.y})"


ZERO2 = Vec2Q(Fraction(0), Fraction(0))


@dataclass(frozen=True, slots=True)
class Mat2Z:
    s11: int
    s12: int
    s21: int
    s22: int

    @classmethod
    def of(cls, rows) -> "Mat2Z":
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    @classmethod
    def parse(cls, text: str) -> "Mat2Z":
        parts = text.replace(",", " ").split()
        if len(parts) != 4:
            raise ValueError(f"expected 4 integers, got {text!r}")
        return cls(*(int(p) for p in parts))

    @classmethod
    def identity(cls) -> "Mat2Z":
        return cls(1, 0, 0, 1)

    def flat(self) -> list[int]:
        return [self.s11, self.s12, self.s21, self.s22]

    def rows(self) -> list[list[int]]:
        return [[self.s11, self.s12], [self.s21, self.s22]]

    def __str__(self):
        return " ".join(str(v) for v in self.flat())

    def det(self) -> int:
        return self.s11 * self.s22 - self.s12 * self.s21

    def trace(self) -> int:
        return self.s11 + self.s22

    def transpose(self) -> "Mat2Z":
        return Mat2Z(self.s11, self.s21, self.s12, self.s22)

    def __neg__(self) -> "Mat2Z":
        return Mat2Z(-self.s11, -self.s12, -self.s21, -self.s22)

    def __add__(self, o: "Mat2Z") -> "Mat2Z":
        return Mat2Z(self.s11 + o.s11, self.s12 + o.s12, self.s21 + o.s21, self.s22 + o.s22)

    def __sub__(self, o: "Mat2Z") -> "Mat2Z":
        return Mat2Z(self.s11 - o.s11, self.s12 - o.s12, self.s21 - o.s21, self.s22 - o.s22)

    def scale(self, k: int) -> "Mat2Z":
        return Mat2Z(k * self.s11, k * self.s12, k * self.s21, k * self.s22)

    def __matmul__(self, o):
        if isinstance(o, Mat2Z):
            return Mat2Z(
                self.s11 * o.s11 + self.s12 * o.s21,
                self.s11 * o.s12 + self.s12 * o.s22,
                self.s21 * o.s11 + self.s22 * o.s21,
                self.s21 * o.s12 + self.s22 * o.s22,
            )
        x, y = o
        return Vec2Q(self.s11 * x + self.s12 * y, self.s21 * x + self.s22 * y)

    def inv(self) -> "Mat2Z":
        dt = self.det()
        if dt not in (1, -1):
            raise ValueError(f"{self} is not invertible over Z")
        return Mat2Z(dt * self.s22, -dt * self.s12, -dt * self.s21, dt * self.s11)

    def adj(self) -> "Mat2Z":
        return Mat2Z(self.s22, -self.s12, -self.s21, self.s11)

    def __pow__(self, n: int) -> "Mat2Z":
        base = self if n >= 0 else self.inv()
        out = Mat2Z.identity()
        for _ in range(abs(n)):
            out = out @ base
        return out

    def is_diagonal(self) -> bool:
        return self.s12 == 0 and self.s21 == 0

    def solve(self, v) -> Vec2Q:
        """Rational solution of ``self @ w == v``."""
        dt = self.det()
        if dt == 0:
            raise SingularMatrix(f"{self} is singular")
        x, y = Fraction(v[0]), Fraction(v[1])
        return Vec2Q((self.s22 * x - self.s12 * y) / dt, (-self.s21 * x + self.s11 * y) / dt)


I2 = Mat2Z.identity()
R = Mat2Z(1, 1, 0, 1)
L = Mat2Z(1, 0, 1, 1)
SWAP = Mat2Z(0, 1, 1, 0)


# ---------------------------------------------------------------------------
# Smith normal form and cokernels

@dataclass(frozen=True)
class SmithForm:
    U: Mat2Z
    D: Mat2Z
    V: Mat2Z

    @property
    def factors(self) -> tuple[int, int]:
        return self.D.s11, self.D.s22


def smith_normal_form(M: Mat2Z) -> SmithForm:
    """Return U, D, V with ``U @ M @ V == D`` diagonal, d1 | d2, d1, d2 >= 0."""
    A = [[M.s11, M.s12], [M.s21, M.s22]]
    U = [[1, 0], [0, 1]]
    V = [[1, 0], [0, 1]]

    def row_op(i, j, k):  # row_i += k * row_j
        for t in range(2):
            A[i][t] += k * A[j][t]
            U[i][t] += k * U[j][t]

    def col_op(i, j, k):  # col_i += k * col_j
        for t in range(2):
            A[t][i] += k * A[t][j]
            V[t][i] += k * V[t][j]

    def swap_rows():
        A[0], A[1] = A[1], A[0]
        U[0], U[1] = U[1], U[0]

    def swap_cols():
        for X in (A, V):
            X[0][0], X[0][1] = X[0][1], X[0][0]
            X[1][0], X[1][1] = X[1][1], X[1][0]

    while True:
        entries = [(abs(A[i][j]), i, j) for i in range(2) for j in range(2) if A[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        if i:
            swap_rows()
        if j:
            swap_cols()
        p = A[0][0]
        dirty = False
        if A[1][0]:
            row_op(1, 0, -(A[1][0] // p))
            dirty = dirty or A[1][0] != 0
        if A[0][1]:
            col_op(1, 0, -(A[0][1] // p))
            dirty = dirty or A[0][1] != 0
        if dirty:
            continue
        if A[1][1] % p:
            row_op(0, 1, 1)
            continue
        break

    for i in range(2):
        if A[i][i] < 0:
            for t in range(2):
                A[i][t] = -A[i][t]
                U[i][t] = -U[i][t]
    if A[0][0] == 0 and A[1][1] != 0:
        swap_rows()
        swap_cols()
    return SmithForm(Mat2Z.of(U), Mat2Z.of(A), Mat2Z.of(V))


@dataclass
class CokerGroup:
    """The finite group M^{-1}Z^2 / Z^2, isomorphic to Z^2 / M Z^2.

    ``elements`` lists representatives in the half-open unit square.
    ``labels`` lists integer coset representatives of Z^2 / M Z^2.
    """

    source: Mat2Z
    invariant_factors: tuple[int, int]
    elements: list[Vec2Q]
    snf: SmithForm = field(repr=False)

    @staticmethod
    def reduce(v) -> Vec2Q:
        return Vec2Q.of(*v).mod1()

    def order(self) -> int:
        return len(self.elements)

    def contains(self, v) -> bool:
        return (self.source @ Vec2Q.of(*v)).is_integral()

    def label_key(self, m) -> tuple[int, int]:
        d1, d2 = self.invariant_factors
        u = self.snf.U @ (int(m[0]), int(m[1]))
        return int(u.x) % d1, int(u.y) % d2

    def labels(self) -> list[tuple[int, int]]:
        """Canonical integer representatives of Z^2 / M Z^2."""
        seen: dict[tuple[int, int], tuple[int, int]] = {}
        n = self.order()
        bound = max(n, 1)
        for y in range(bound):
            for x in range(bound):
                k = self.label_key((x, y))
                if k not in seen:
                    seen[k] = (x, y)
            if len(seen) == n:
                break
        return sorted(seen.values(), key=lambda p: (p[1], p[0]))

    def canonical_label(self, m) -> tuple[int, int]:
        key = self.label_key(m)
        for lab in self.labels():
            if self.label_key(lab) == key:
                return lab
        raise AssertionError("label enumeration incomplete")

    def structure(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d != 1)


def cokernel(M: Mat2Z) -> CokerGroup:
    if M.det() == 0:
        raise SingularMatrix(f"cokernel of singular {M} is infinite")
    snf = smith_normal_form(M)
    d1, d2 = snf.factors
    V = snf.V
    elems = {
        (V @ (Fraction(i, d1), Fraction(j, d2))).mod1()
        for i in range(d1)
        for j in range(d2)
    }
    return CokerGroup(M, (d1, d2), sorted(elems), snf)


# ---------------------------------------------------------------------------
# Hyperbolic conjugacy

def is_admissible(S: Mat2Z) -> bool:
    return S.det() == 1 and S.trace() > 2


def require_admissible(S: Mat2Z) -> None:
    if not is_admissible(S):
        if S.det() != 1:
            raise NotAdmissible(f"{S} has determinant {S.det()}, expected 1")
        raise NotAdmissible("trace must exceed 2")


def _sign_surd(x: int, y: int, D: int) -> int:
    """Sign of x + y*sqrt(D) for non-square D."""
    sx = (x > 0) - (x < 0)
    sy = (y > 0) - (y < 0)
    if sy == 0 or sx == sy:
        return sx if sx else sy
    if sx == 0:
        return sy
    return sx if x * x > y * y * D else sy


def _gt_int(P: int, Q: int, sgn: int, D: int, t: int) -> bool:
    """Whether (P + sgn*sqrt(D)) / Q > t."""
    s = _sign_surd(P - t * Q, sgn, D)
    return s > 0 if Q > 0 else s < 0


def _cf_floor(P: int, Q: int, D: int) -> int:
    s = isqrt(D)
    return (P + s) // Q if Q > 0 else (P + s + 1) // Q


def _reduced(P: int, Q: int, D: int) -> bool:
    return (_gt_int(P, Q, 1, D, 1)
            and _gt_int(P, Q, -1, D, -1)
            and not _gt_int(P, Q, -1, D, 0))


def _word_matrix(word: str) -> Mat2Z:
    out = I2
    for ch in word:
        out = out @ (R if ch == "R" else L)
    return out


def _swap_letters(word: str) -> str:
    return word.translate(str.maketrans("RL", "LR"))


@dataclass(frozen=True)
class RLCycle:
    """A cyclic word in R and L; ``word`` is one rotation of it."""

    word: str

    @property
    def canonical(self) -> str:
        w = self.word
        return max(w[i:] + w[:i] for i in range(len(w)))

    def exponents(self) -> list[int]:
        w = self.canonical
        runs, prev = [], ""
        for ch in w:
            if ch == prev:
                runs[-1] += 1
            else:
                runs.append(1)
                prev = ch
        return runs

    def swapped(self) -> "RLCycle":
        return RLCycle(_swap_letters(self.word))

    def matrix(self) -> Mat2Z:
        return _word_matrix(self.word)

    def __eq__(self, other):
        return isinstance(other, RLCycle) and self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def __str__(self):
        return f"cycle({' '.join(self.canonical)})"


@lru_cache(maxsize=65536)
def _reduce_hyperbolic(S: Mat2Z) -> tuple[Mat2Z, str]:
    """Return (P, word) with P in SL(2,Z) and P S P^-1 equal to the word's matrix."""
    require_admissible(S)
    a, b, c, d = S.flat()
    D = S.trace() ** 2 - 4
    # Attracting fixed point w = (a - d + sqrt(D)) / (2c); c != 0 since |tr| > 2.
    P, Q = a - d, 2 * c
    conj = I2
    steps = 0
    while not _reduced(P, Q, D) or conj.det() != 1:
        k = _cf_floor(P, Q, D)
        P = k * Q - P
        Q = (D - P * P) // Q
        conj = Mat2Z(0, 1, 1, -k) @ conj
        steps += 1
        if steps > 10_000:
            raise RuntimeError("continued fraction failed to become periodic")
    start = (P, Q)
    quotients = []
    while True:
        k = _cf_floor(P, Q, D)
        quotients.append(k)
        P = k * Q - P
        Q = (D - P * P) // Q
        if (P, Q) == start:
            break
    if len(quotients) % 2:
        quotients = quotients * 2
    prim = "".join(("R" if i % 2 == 0 else "L") * k for i, k in enumerate(quotients))
    target = conj @ S @ conj.inv()
    N = _word_matrix(prim)
    word, power = prim, N
    while power != target:
        if power.trace() > target.trace():
            raise AssertionError(f"reduction of {S} did not close up")
        power = power @ N
        word += prim
    return conj, word


def rl_word(S: Mat2Z) -> RLCycle:
    """The cyclic R/L word of a positive SL(2,Z)-conjugate of ``S``."""
    return RLCycle(_reduce_hyperbolic(S)[1])


class Verdict(enum.Enum):
    NOT_CONJUGATE = "NotConjugate"
    CONJUGATE_SL = "ConjugateSL"
    CONJUGATE_GL_ONLY = "ConjugateGLOnly"
    CONJUGATE_TO_INVERSE = "ConjugateToInverse"

    @property
    def positive(self) -> bool:
        return self is not Verdict.NOT_CONJUGATE


@dataclass(frozen=True)
class ConjugacyResult:
    verdict: Verdict
    witness: Optional[Mat2Z] = None


def _rotation_witness(w1: str, w2: str) -> Optional[Mat2Z]:
    """Matrix U with U^-1 N(w1) U = N(w2) when w2 is a rotation of w1."""
    if len(w1) != len(w2):
        return None
    for k in range(len(w1)):
        if w1[k:] + w1[:k] == w2:
            return _word_matrix(w1[:k])
    return None


def _conjugator(S1: Mat2Z, T: Mat2Z, allow_swap: bool) -> Optional[Mat2Z]:
    P1, w1 = _reduce_hyperbolic(S1)
    P2, w2 = _reduce_hyperbolic(T)
    U = _rotation_witness(w1, w2)
    if U is not None:
        return P2.inv() @ U.inv() @ P1
    if allow_swap:
        U = _rotation_witness(_swap_letters(w1), w2)
        if U is not None:
            return P2.inv() @ U.inv() @ SWAP @ P1
    return None


def weakly_conjugate(S1: Mat2Z, S2: Mat2Z) -> ConjugacyResult:
    """Decide whether S2 is GL(2,Z)-conjugate to S1 or to S1's inverse image.

    The witness B satisfies ``B @ S1 @ B.inv()`` equal to S2 or to S2^-1.
    """
    require_admissible(S1)
    require_admissible(S2)
    if S1.trace() != S2.trace():
        return ConjugacyResult(Verdict.NOT_CONJUGATE)
    B = _conjugator(S1, S2, allow_swap=False)
    if B is not None:
        return ConjugacyResult(Verdict.CONJUGATE_SL, B)
    B = _conjugator(S1, S2, allow_swap=True)
    if B is not None:
        return ConjugacyResult(Verdict.CONJUGATE_GL_ONLY, B)
    B = _conjugator(S1, S2.inv(), allow_swap=True)
    if B is not None:
        return ConjugacyResult(Verdict.CONJUGATE_TO_INVERSE, B)
    return ConjugacyResult(Verdict.NOT_CONJUGATE)


def weak_class_key(S: Mat2Z) -> str:
    """A complete invariant of the weak conjugacy class of ``S``."""
    words = []
    for T in (S, S.inv()):
        cyc = rl_word(T)
        words += [cyc.canonical, cyc.swapped().canonical]
    return max(words)


def positive_words(trace_max: int) -> Iterable[str]:
    """R/L words (starting with R, ending with L) whose matrix has trace <= trace_max."""

    def grow(word: str, M: Mat2Z, letter: str, cap: int):
        step = R if letter == "R" else L
        other = "L" if letter == "R" else "R"
        N = M
        for k in range(1, cap + 1):
            N = N @ step
            if N.trace() > trace_max:
                break
            w = word + letter * k
            if letter == "L":
                yield w
            yield from grow(w, N, other, trace_max)

    # Trace is flat along the first run and strictly grows afterwards.
    yield from grow("", I2, "R", max(trace_max - 2, 0))


def enumerate_weak_classes(trace_max: int) -> dict[int, list[Mat2Z]]:
    """One representative per weak conjugacy class, grouped by trace."""
    out: dict[int, dict[str, Mat2Z]] = {}
    for w in positive_words(trace_max):
        M = _word_matrix(w)
        key = weak_class_key(M)
        bucket = out.setdefault(M.trace(), {})
        if key not in bucket:
            bucket[key] = M
    return {t: sorted(v.values(), key=lambda m: m.flat()) for t, v in sorted(out.items())}


# ---------------------------------------------------------------------------
# Square-root decompositions S = nK +/- I

def decompose_nK(S: Mat2Z, sign: int) -> Optional[tuple[int, Mat2Z]]:
    """Write S = nK + I (sign=+1, det K=-1) or S = nK - I (sign=-1, det K=1), tr K = n."""
    require_admissible(S)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    t = S.trace() - 2 * sign
    if not is_square(t):
        return None
    n = isqrt(t)
    if n <= 0 or (sign == -1 and n <= 2):
        return None
    M = S - I2.scale(sign)
    if any(v % n for v in M.flat()):
        return None
    K = Mat2Z(*(v // n for v in M.flat()))
    assert K.trace() == n and K.det() == -sign
    return n, K


def gcd_all(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
