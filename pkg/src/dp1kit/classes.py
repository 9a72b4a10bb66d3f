"""Distinguished classes on the surface and the Weyl group action."""
from __future__ import annotations

import enum
import random
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

import numpy as np

from .errors import EnumerationMismatch, KindError, OrbitCapExceeded, DomainError
from .lattice import (
    K_S, N, SURFACE, PicClass, AnyClass, bertini_pullback, make, pair, unit, matrix_of,
)

DEFAULT_ORBIT_CAP = 10**6


class ClassKind(enum.Enum):
    ROOT = (-2, 0)
    MINUS_ONE = (-1, -1)
    CONIC = (0, -2)
    CUBIC = (1, -3)

    @property
    def square(self) -> int:
        return self.value[0]

    @property
    def k_degree(self) -> int:
        return self.value[1]


SEEDS = {
    ClassKind.ROOT: (0, -1, 1, 0, 0, 0, 0, 0, 0),
    ClassKind.MINUS_ONE: (0, -1, 0, 0, 0, 0, 0, 0, 0),
    ClassKind.CONIC: (1, 1, 0, 0, 0, 0, 0, 0, 0),
    ClassKind.CUBIC: (1, 0, 0, 0, 0, 0, 0, 0, 0),
}
EXPECTED_COUNTS = {ClassKind.ROOT: 240, ClassKind.MINUS_ONE: 240, ClassKind.CONIC: 2160, ClassKind.CUBIC: 17280}

_KIND_ALIASES = {
    "roots": ClassKind.ROOT, "root": ClassKind.ROOT,
    "minus-one": ClassKind.MINUS_ONE, "minus_one": ClassKind.MINUS_ONE,
    "conics": ClassKind.CONIC, "conic": ClassKind.CONIC,
    "cubics": ClassKind.CUBIC, "cubic": ClassKind.CUBIC,
}


def parse_kind(name: str) -> ClassKind:
    try:
        return _KIND_ALIASES[name.lower()]
    except KeyError:
        raise DomainError(f"unknown class kind {name!r}") from None


def signature(x: AnyClass) -> tuple:
    return pair(x, x), pair(x, K_S)


def kind_of(x: AnyClass) -> ClassKind | None:
    sig = signature(x)
    for k in ClassKind:
        if k.value == sig:
            return k
    return None


def require_kind(x: AnyClass, kind: ClassKind) -> None:
    if x.basis != SURFACE or kind_of(x) is not kind:
        raise KindError(f"{x} is not of kind {kind.name}")


# -- Diophantine enumeration ---------------------------------------------

def degree_window(square: int, k_degree: int) -> range:
    """Integers d admitting m with sum(m) = k + 3d and sum(m^2) = d^2 - square.

    Cauchy-Schwarz (sum m)^2 <= 8 sum m^2 gives d^2 + 6kd + k^2 + 8s <= 0.
    """
    disc = 8 * k_degree * k_degree - 8 * square
    if disc < 0:
        return range(0)
    r = isqrt(disc) + 1
    lo, hi = -3 * k_degree - r, -3 * k_degree + r
    ok = [d for d in range(lo, hi + 1) if d * d + 6 * k_degree * d + k_degree**2 + 8 * square <= 0]
    return range(min(ok), max(ok) + 1) if ok else range(0)


def _sorted_multisets(n: int, total: int, sumsq: int, cap: int):
    """Non-increasing integer n-tuples, entries <= cap, with given sum and sum of squares."""
    if n == 0:
        if total == 0 and sumsq == 0:
            yield ()
        return
    if sumsq < 0 or total * total > n * sumsq:
        return
    top = min(cap, isqrt(sumsq))
    # the first entry is the largest, so it is at least the mean
    low = -(-total // n) if total >= 0 else -((-total) // n)
    low = max(low, -isqrt(sumsq))
    for v in range(top, low - 1, -1):
        for rest in _sorted_multisets(n - 1, total - v, sumsq - v * v, v):
            yield (v,) + rest


def _distinct_permutations(items: tuple):
    counts = Counter(items)
    keys = sorted(counts)
    n = len(items)
    out = []

    def rec(prefix):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                prefix.append(k)
                rec(prefix)
                prefix.pop()
                counts[k] += 1

    rec([])
    return out


def diophantine_solutions(square: int, k_degree: int) -> list[tuple[int, ...]]:
    """All coefficient vectors (d; m) with x^2 = square and x.K_S = k_degree."""
    sols = []
    for d in degree_window(square, k_degree):
        total = k_degree + 3 * d
        sumsq = d * d - square
        if sumsq < 0:
            continue
        for ms in _sorted_multisets(8, total, sumsq, isqrt(sumsq)):
            for perm in _distinct_permutations(ms):
                sols.append((d,) + perm)
    return sorted(set(sols))


# -- reflections and orbits ----------------------------------------------

def _pair_t(a, b):
    return a[0] * b[0] - sum(x * y for x, y in zip(a[1:], b[1:]))


SIMPLE_ROOTS: tuple[tuple[int, ...], ...] = tuple(
    [tuple(0 if j not in (i, i + 1) else (-1 if j == i else 1) for j in range(N)) for i in range(1, 8)]
    + [(1, 1, 1, 1, 0, 0, 0, 0, 0)]
)


def _reflect_t(alpha, x):
    c = _pair_t(x, alpha)
    return tuple(a + c * b for a, b in zip(x, alpha))


def reflect(alpha: AnyClass, x: AnyClass) -> AnyClass:
    if alpha.basis != SURFACE or signature(alpha) != ClassKind.ROOT.value:
        raise KindError(f"{alpha} is not a root")
    return x + pair(x, alpha) * alpha


def orbit_tuples(seed: tuple, cap: int = DEFAULT_ORBIT_CAP) -> list[tuple]:
    seen = {seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for x in frontier:
            for a in SIMPLE_ROOTS:
                y = _reflect_t(a, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise OrbitCapExceeded(f"orbit exceeds cap {cap}")
        frontier = nxt
    return sorted(seen)


def orbit(seed: AnyClass, cap: int = DEFAULT_ORBIT_CAP) -> list[PicClass]:
    if seed.basis != SURFACE or not seed.is_integral:
        raise DomainError("orbit seeds must be integral surface classes")
    return [PicClass(SURFACE, t) for t in orbit_tuples(seed.coeffs, cap)]


@dataclass(frozen=True)
class Census:
    """Independent enumerations of one kind and how they compare."""

    kind: ClassKind
    diophantine: frozenset
    orbit: frozenset
    non_nef_extra: frozenset  # signature solutions that are not nef

    @property
    def consistent(self) -> bool:
        if self.kind is ClassKind.CUBIC:
            # the signature (1,-3) also admits -K_S + 2l, which is not nef
            ells = _enumerate_tuples(ClassKind.MINUS_ONE)
            expected = frozenset(tuple(-k + 2 * x for k, x in zip(K_S.coeffs, t)) for t in ells)
            return self.diophantine - self.orbit == expected == self.non_nef_extra and self.orbit <= self.diophantine
        return self.diophantine == self.orbit


def census(kind: ClassKind) -> Census:
    dio = frozenset(diophantine_solutions(*kind.value))
    orb = frozenset(orbit_tuples(SEEDS[kind]))
    extra = frozenset()
    if kind is ClassKind.CUBIC:
        ells = np.array(_enumerate_tuples(ClassKind.MINUS_ONE), dtype=np.int64)
        rows = np.array(sorted(dio), dtype=np.int64)
        nef = (pairing_matrix(rows, ells) >= 0).all(axis=1)
        extra = frozenset(tuple(int(v) for v in r) for r in rows[~nef])
        if frozenset(tuple(int(v) for v in r) for r in rows[nef]) != orb:
            raise EnumerationMismatch("CUBIC: nef signature solutions differ from the orbit of h")
    return Census(kind, dio, orb, extra)


@lru_cache(maxsize=None)
def _enumerate_tuples(kind: ClassKind) -> tuple[tuple[int, ...], ...]:
    c = census(kind)
    if not c.consistent:
        diff = sorted((c.diophantine - c.non_nef_extra) ^ c.orbit)
        raise EnumerationMismatch(f"{kind.name}: Diophantine set differs from orbit on {diff[:20]}")
    return tuple(sorted(c.orbit))


def enumerate_kind(kind: ClassKind) -> list[PicClass]:
    return [PicClass(SURFACE, t) for t in _enumerate_tuples(kind)]


@lru_cache(maxsize=None)
def array_of(kind: ClassKind) -> np.ndarray:
    """Coefficient rows of a kind as an int64 array, canonical order."""
    arr = np.array(_enumerate_tuples(kind), dtype=np.int64)
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=None)
def index_of(kind: ClassKind) -> dict:
    return {t: i for i, t in enumerate(_enumerate_tuples(kind))}


FORM_S = np.diag([1] + [-1] * 8).astype(np.int64)


def pairing_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Surface pairings between the rows of a and the rows of b."""
    return (a @ FORM_S) @ b.T


# -- Weyl group ------------------------------------------------------------

@dataclass(frozen=True)
class WeylElement:
    matrix: tuple[tuple[int, ...], ...]

    def __call__(self, x: AnyClass) -> AnyClass:
        return make(x.basis, [sum(a * b for a, b in zip(row, x.coeffs)) for row in self.matrix])

    def __matmul__(self, other: "WeylElement") -> "WeylElement":
        cols = list(zip(*other.matrix))
        return WeylElement(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.matrix))

    @staticmethod
    def identity() -> "WeylElement":
        return WeylElement(tuple(tuple(int(i == j) for j in range(N)) for i in range(N)))

    @staticmethod
    def reflection(alpha: AnyClass) -> "WeylElement":
        m = matrix_of(lambda x: reflect(alpha, x))
        return WeylElement(tuple(tuple(r) for r in m))

    def preserves_form(self) -> bool:
        m = np.array(self.matrix, dtype=object)
        g = np.diag([1] + [-1] * 8).astype(object)
        return bool((m.T @ g @ m == g).all())

    def fixes_canonical(self) -> bool:
        return self(K_S) == K_S

    def is_weyl(self) -> bool:
        return self.preserves_form() and self.fixes_canonical()


def simple_reflections() -> list[WeylElement]:
    return [WeylElement.reflection(PicClass(SURFACE, a)) for a in SIMPLE_ROOTS]


def random_word(rng: random.Random, length: int) -> WeylElement:
    gens = simple_reflections()
    w = WeylElement.identity()
    for _ in range(length):
        w = rng.choice(gens) @ w
    return w


def bertini_element() -> WeylElement:
    return WeylElement(tuple(tuple(r) for r in matrix_of(bertini_pullback)))


# -- incidences -------------------------------------------------------------

def conics_disjoint_from(ell: AnyClass) -> list[PicClass]:
    require_kind(ell, ClassKind.MINUS_ONE)
    conics = array_of(ClassKind.CONIC)
    vals = pairing_matrix(conics, np.array([ell.coeffs]))[:, 0]
    return [PicClass(SURFACE, tuple(int(v) for v in row)) for row in conics[vals == 0]]


def minus_one_components_of(C: AnyClass) -> list[PicClass]:
    require_kind(C, ClassKind.CONIC)
    ells = array_of(ClassKind.MINUS_ONE)
    vals = pairing_matrix(ells, np.array([C.coeffs]))[:, 0]
    return [PicClass(SURFACE, tuple(int(v) for v in row)) for row in ells[vals == 0]]


@dataclass(frozen=True)
class LocusIntersection:
    count: int
    pairing: int
    generality_assumed: bool


def locus_intersection_count(ell1: AnyClass, ell2: AnyClass) -> LocusIntersection:
    """Number of points in which the planes attached to two (-1)-classes meet."""
    require_kind(ell1, ClassKind.MINUS_ONE)
    require_kind(ell2, ClassKind.MINUS_ONE)
    if ell1 == ell2:
        raise DomainError("locus_intersection_count needs distinct classes")
    p = pair(ell1, ell2)
    if p not in (-1, 0, 1, 2, 3):
        raise AssertionError(f"impossible pairing {p} between (-1)-classes")
    if p <= 1:
        return LocusIntersection(0, p, False)
    if p == 2:
        return LocusIntersection(1, p, False)
    assert ell2 == bertini_pullback(ell1)
    return LocusIntersection(3, p, True)


def nef_classes_of_anticanonical_degree_two() -> list[PicClass]:
    """Integral nef classes L with -K_S.L = 2, found by exhaustive search.

    Hodge index bounds L^2 by (L.K)^2 / K^2 = 4, and Cauchy-Schwarz bounds d
    for each value of L^2, so the search is complete.
    """
    ells = array_of(ClassKind.MINUS_ONE)
    found = []
    for s in range(0, 5):
        for t in diophantine_solutions(s, -2):
            if (pairing_matrix(ells, np.array([t]))[:, 0] >= 0).all():
                found.append(PicClass(SURFACE, t))
    return sorted(found)


def expected_degree_two_nef() -> list[PicClass]:
    out = {(-2 * K_S).coeffs}
    out |= set(_enumerate_tuples(ClassKind.CONIC))
    out |= {(-K_S + PicClass(SURFACE, t)).coeffs for t in _enumerate_tuples(ClassKind.MINUS_ONE)}
    return sorted(PicClass(SURFACE, t) for t in out)


def standard_classes():
    """Named classes used throughout: h, e1..e8 and their sum."""
    h = unit(SURFACE, 0)
    e = [unit(SURFACE, i) for i in range(1, 9)]
    return h, e
