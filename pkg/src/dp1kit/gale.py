"""Association (Gale duality) of ordered point configurations, exactly over Q.

The del Pezzo position test uses the standard characterization of 8 points
in P^2 blowing up to a degree-one del Pezzo surface: no 3 collinear, no 6 on
a conic, and no cubic through all 8 singular at one of them.  These
conditions come from the general theory of del Pezzo surfaces rather than
from the duality itself and are isolated in ``del_pezzo_position``.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from . import exact
from .errors import DomainError, PositionError


@dataclass(frozen=True)
class PointConfiguration:
    k: int
    matrix: tuple[tuple[Fraction, ...], ...]  # (k+1) x n, columns are points

    def __post_init__(self):
        if len(self.matrix) != self.k + 1:
            raise DomainError(f"need {self.k + 1} coordinate rows, got {len(self.matrix)}")
        widths = {len(r) for r in self.matrix}
        if len(widths) != 1:
            raise DomainError("ragged coordinate matrix")
        for j in range(self.n):
            if all(r[j] == 0 for r in self.matrix):
                raise DomainError(f"point {j} has all coordinates zero")

    @property
    def n(self) -> int:
        return len(self.matrix[0])

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "PointConfiguration":
        m = tuple(tuple(_to_fraction(v) for v in r) for r in rows)
        return PointConfiguration(len(m) - 1, m)

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.matrix)

    def permuted(self, perm: Sequence[int]) -> "PointConfiguration":
        return PointConfiguration(self.k, tuple(tuple(r[p] for p in perm) for r in self.matrix))

    def to_json(self) -> dict:
        return {"k": self.k, "points": [[_fmt(v) for v in self.column(j)] for j in range(self.n)]}

    @staticmethod
    def from_json(obj: dict) -> "PointConfiguration":
        try:
            pts = obj["points"]
            cols = [[_to_fraction(v) for v in p] for p in pts]
            k = int(obj.get("k", len(cols[0]) - 1))
        except (KeyError, TypeError, IndexError, ValueError) as exc:
            raise DomainError(f"malformed point configuration: {exc}") from None
        if any(len(c) != k + 1 for c in cols):
            raise DomainError("every point needs k+1 coordinates")
        return PointConfiguration(k, tuple(tuple(c[i] for c in cols) for i in range(k + 1)))


def _to_fraction(v) -> Fraction:
    if isinstance(v, float):
        raise DomainError(f"floating point value {v!r} rejected; use integers or 'p/q' strings")
    if isinstance(v, bool):
        raise DomainError("booleans are not coordinates")
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, str):
        s = v.strip()
        if any(ch in s for ch in ".eE"):
            raise DomainError(f"floating point literal {v!r} rejected")
        try:
            return Fraction(s)
        except ValueError:
            raise DomainError(f"not a rational number: {v!r}") from None
    raise DomainError(f"unsupported coordinate {v!r}")


def _fmt(v: Fraction):
    return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


# -- association ---------------------------------------------------------------

def associate(A: PointConfiguration) -> PointConfiguration:
    """B with A B^t = 0, rows the reduced echelon basis of the kernel of A."""
    n = A.n
    if exact.rank(A.matrix) != A.k + 1:
        raise DomainError("configuration matrix is rank deficient")
    for i, j in combinations(range(n), 2):
        if exact.rank([A.column(i), A.column(j)]) < 2:
            raise DomainError(f"points {i} and {j} coincide")
    ker = exact.nullspace(A.matrix, n)
    red, _ = exact.rref(ker)
    return PointConfiguration(n - A.k - 2, tuple(tuple(r) for r in red))


def orthogonal(A: PointConfiguration, B: PointConfiguration) -> bool:
    return all(sum(a * b for a, b in zip(ra, rb)) == 0 for ra in A.matrix for rb in B.matrix)


def same_row_space(A: PointConfiguration, B: PointConfiguration) -> bool:
    return exact.rref(A.matrix)[0] == exact.rref(B.matrix)[0]


def _shuffle_sign(I: Sequence[int], n: int) -> int:
    """Sign of the permutation listing I and then its complement, both increasing."""
    inv = sum(1 for i in I for j in range(n) if j not in I and j < i)
    return -1 if inv % 2 else 1


@dataclass
class MinorReport:
    checked: int
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_minor_identity(A: PointConfiguration, B: PointConfiguration) -> MinorReport:
    """a_I b_J + eps a_J b_I = 0 for |I| = |J| = 3 sharing two indices, where
    b_I is the minor of B on the columns outside I.

    With the columns of each minor taken in increasing order the sign is
    eps = -s(I)s(J), s the sign of the shuffle (I, complement of I).  It is +1
    exactly when the two differing indices have opposite parity.
    """
    if not orthogonal(A, B):
        raise DomainError("A B^t is not zero")
    n = A.n
    size_a, size_b = A.k + 1, B.k + 1
    if size_a + size_b != n:
        raise DomainError("dimensions are not complementary")
    a = exact.minors(A.matrix, size_a)
    bm = exact.minors(B.matrix, size_b)
    comp = lambda I: tuple(j for j in range(n) if j not in I)
    report = MinorReport(0)
    for I, J in combinations(list(a), 2):
        if len(set(I) & set(J)) != size_a - 1:
            continue
        eps = -_shuffle_sign(I, n) * _shuffle_sign(J, n)
        lhs = a[I] * bm[comp(J)] + eps * a[J] * bm[comp(I)]
        report.checked += 1
        if lhs != 0:
            report.violations.append((I, J, lhs))
    return report


def general_linear_position(P: PointConfiguration) -> bool:
    return all(v != 0 for v in exact.minors(P.matrix, P.k + 1).values())


# -- del Pezzo position ---------------------------------------------------------------

def _veronese2(p):
    x, y, z = p
    return [x * x, x * y, y * y, x * z, y * z, z * z]


_CUBIC_MONOMIALS = [(a, b, 3 - a - b) for a in range(4) for b in range(4 - a)]


def _cubic_row(p):
    x, y, z = p
    return [x**a * y**b * z**c for a, b, c in _CUBIC_MONOMIALS]


def _cubic_gradient_rows(p):
    x, y, z = p
    rows = []
    for var in range(3):
        row = []
        for mono in _CUBIC_MONOMIALS:
            e = list(mono)
            c = e[var]
            if c == 0:
                row.append(Fraction(0))
                continue
            e[var] -= 1
            row.append(c * x ** e[0] * y ** e[1] * z ** e[2])
        rows.append(row)
    return rows


@dataclass
class PositionReport:
    ok: bool
    reason: str = ""
    indices: tuple = ()


def del_pezzo_position(Q: PointConfiguration) -> PositionReport:
    if Q.k != 2 or Q.n != 8:
        raise DomainError("del Pezzo position is defined for 8 points in P^2")
    pts = [Q.column(j) for j in range(8)]
    for I in combinations(range(8), 3):
        if exact.det([pts[i] for i in I]) == 0:
            return PositionReport(False, f"collinear {set(I)}", I)
    for I in combinations(range(8), 6):
        if exact.det([_veronese2(pts[i]) for i in I]) == 0:
            return PositionReport(False, "conic", I)
    for i in range(8):
        rows = [_cubic_row(pts[j]) for j in range(8) if j != i] + _cubic_gradient_rows(pts[i])
        if exact.det(rows) == 0:
            return PositionReport(False, f"cubic singular at point {i}", (i,))
    return PositionReport(True)


@dataclass
class Correspondence:
    q_points: PointConfiguration
    p_points: PointConfiguration
    convention: str = "ordered association: the i-th point of P^2 corresponds to the i-th point of P^4"


def build_correspondence(Q: PointConfiguration) -> Correspondence:
    rep = del_pezzo_position(Q)
    if not rep.ok:
        raise PositionError(f"points are not in del Pezzo position: {rep.reason}")
    return Correspondence(Q, associate(Q))


def random_configuration(rng: random.Random, k: int = 2, n: int = 8, bound: int = 20) -> PointConfiguration:
    """Random exact-rational points with numerators and denominators up to ``bound``."""
    rows = tuple(
        tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(n)) for _ in range(k + 1)
    )
    return PointConfiguration(k, rows)


def load_configuration(path: str) -> PointConfiguration:
    try:
        with open(path) as fh:
            obj = json.load(fh, parse_float=_reject_float)
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path} is not valid JSON: {exc}") from None
    return PointConfiguration.from_json(obj)


def _reject_float(s: str):
    raise DomainError(f"floating point literal {s} rejected; use 'p/q' strings")
