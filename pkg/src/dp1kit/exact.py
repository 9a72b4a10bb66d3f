"""Exact linear algebra over Q: echelon forms, ranks, determinants, cone
membership by an exact phase-one simplex, and double description."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

Vec = Sequence


def _frac_rows(rows: Iterable[Vec]) -> list[list[Fraction]]:
    return [[Fraction(v) for v in r] for r in rows]


def rref(rows: Iterable[Vec]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form with unit pivots; returns (nonzero rows, pivot columns)."""
    m = _frac_rows(rows)
    if not m:
        return [], []
    ncol = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncol):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Iterable[Vec]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Iterable[Vec], ncol: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : M x = 0}, one vector per free column, free entry 1."""
    rows = list(rows)
    if ncol is None:
        ncol = len(rows[0])
    red, piv = rref(rows) if rows else ([], [])
    free = [c for c in range(ncol) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncol
        x[f] = Fraction(1)
        for r, p in zip(red, piv):
            x[p] = -r[f]
        basis.append(x)
    return basis


def det(mat: Sequence[Vec]) -> Fraction:
    m = _frac_rows(mat)
    n = len(m)
    sign = 1
    out = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        piv = m[c][c]
        out *= piv
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / piv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return sign * out


def inverse(mat: Sequence[Vec]) -> list[list[Fraction]]:
    n = len(mat)
    aug = [list(map(Fraction, r)) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(mat)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in red]


def matmul(a: Sequence[Vec], b: Sequence[Vec]) -> list[list]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(r, c)) for c in bt] for r in a]


def primitive(v: Vec) -> tuple[int, ...]:
    """Integer vector scaled to coprime entries, direction preserved."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)


class IntEchelon:
    """Incremental fraction-free echelon basis of integer row vectors."""

    __slots__ = ("rows", "pivots")

    def __init__(self) -> None:
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    def add(self, v: Vec) -> bool:
        w = list(v)
        for b, p in zip(self.rows, self.pivots):
            c = w[p]
            if c:
                bp = b[p]
                w = [bp * x - c * y for x, y in zip(w, b)]
        p = next((i for i, x in enumerate(w) if x), None)
        if p is None:
            return False
        g = 0
        for x in w:
            g = gcd(g, x)
        self.rows.append([x // g for x in w])
        self.pivots.append(p)
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def int_rank(rows: Iterable[Vec], stop_at: int | None = None) -> int:
    ech = IntEchelon()
    for r in rows:
        ech.add(r)
        if stop_at is not None and ech.rank >= stop_at:
            break
    return ech.rank


def in_cone(x: Vec, gens: Sequence[Vec]) -> bool:
    """Exact test x in cone(gens), via phase one of the simplex method with Bland's rule."""
    m = len(x)
    n = len(gens)
    if all(v == 0 for v in x):
        return True
    if n == 0:
        return False
    # tableau rows: [A | I | b], rows sign-normalized so b >= 0
    tab: list[list[Fraction]] = []
    for i in range(m):
        s = -1 if x[i] < 0 else 1
        row = [Fraction(s * g[i]) for g in gens]
        row += [Fraction(int(i == j)) for j in range(m)]
        row.append(Fraction(s * x[i]))
        tab.append(row)
    width = n + m
    basis = [n + i for i in range(m)]
    # reduced costs of objective sum(artificials)
    cost = [Fraction(0)] * (width + 1)
    for row in tab:
        for j in range(width + 1):
            cost[j] -= row[j]
    for j in range(n, width):
        cost[j] += 1
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        leave = None
        for i, row in enumerate(tab):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            break  # unbounded; cannot happen for phase one
        prow = tab[leave]
        pv = prow[enter]
        prow = [v / pv for v in prow]
        tab[leave] = prow
        for i, row in enumerate(tab):
            if i != leave and row[enter] != 0:
                f = row[enter]
                tab[i] = [a - f * b for a, b in zip(row, prow)]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [a - f * b for a, b in zip(cost, prow)]
        basis[leave] = enter
    return -cost[-1] == 0


def extreme_rays(normals: Sequence[Vec], dim: int) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone {x : a.x >= 0 for a in normals} by double description."""
    normals = [tuple(int(v) for v in a) for a in normals]
    if int_rank(normals) < dim:
        raise ValueError("cone is not pointed")
    # initial simplicial cone from dim independent rows
    ech = IntEchelon()
    chosen: list[int] = []
    for i, a in enumerate(normals):
        if ech.add(a):
            chosen.append(i)
            if len(chosen) == dim:
                break
    inv = inverse([normals[i] for i in chosen])
    rays = [primitive([inv[r][c] for r in range(dim)]) for c in range(dim)]
    done = list(chosen)

    def dot(a, r):
        return sum(x * y for x, y in zip(a, r))

    for i in range(len(normals)):
        if i in chosen:
            continue
        a = normals[i]
        vals = [dot(a, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zer = [k for k, v in enumerate(vals) if v == 0]
        active = [frozenset(j for j in done if dot(normals[j], r) == 0) for r in rays]
        new = []
        for p in pos:
            for q in neg:
                common = active[p] & active[q]
                if len(common) < dim - 2:
                    continue
                if any(k not in (p, q) and common <= active[k] for k in range(len(rays))):
                    continue
                vp, vq = vals[p], -vals[q]
                new.append(primitive([vq * x + vp * y for x, y in zip(rays[p], rays[q])]))
        rays = [rays[k] for k in pos + zer] + new
        done.append(i)
    return sorted(set(rays))


def minors(mat: Sequence[Vec], size: int) -> dict[tuple[int, ...], Fraction]:
    """All maximal-row minors on column subsets of the given size."""
    ncol = len(mat[0])
    return {cols: det([[row[c] for c in cols] for row in mat]) for cols in combinations(range(ncol), size)}
