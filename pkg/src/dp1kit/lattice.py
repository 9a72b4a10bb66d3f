"""The two rank-9 lattices and their forms.

A class is stored as coefficients ``(d; m1..m8)`` meaning ``d*h - sum(mi*ei)``
on the surface and ``d*H - sum(mi*Ei)`` on the fourfold.  Curve classes on the
fourfold use the same convention in the basis (h, e1..e8) of a general line
and lines in the exceptional divisors.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

from .errors import BasisMismatch, DomainError
from . import exact

SURFACE = "S"
FOURFOLD = "X"
FOURFOLD_CURVE = "XC"
BASES = (SURFACE, FOURFOLD, FOURFOLD_CURVE)
N = 9

# leading diagonal entry of each form; the remaining entries are -1
FORM_HEAD = {SURFACE: 1, FOURFOLD: 3}


class _ClassOps:
    basis: str
    coeffs: tuple

    def _check(self, other: "AnyClass") -> None:
        if not isinstance(other, _ClassOps):
            raise TypeError(f"expected a class, got {type(other).__name__}")
        if other.basis != self.basis:
            raise BasisMismatch(f"basis mismatch: {self.basis} vs {other.basis}")

    def __add__(self, other):
        self._check(other)
        return make(self.basis, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return make(self.basis, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return make(self.basis, [-a for a in self.coeffs])

    def __mul__(self, k):
        if isinstance(k, float):
            raise TypeError("floating point scalars are not allowed")
        return make(self.basis, [k * a for a in self.coeffs])

    __rmul__ = __mul__

    def __truediv__(self, k):
        return make(self.basis, [Fraction(a) / k for a in self.coeffs])

    @property
    def d(self):
        return self.coeffs[0]

    @property
    def m(self):
        return self.coeffs[1:]

    def sort_key(self):
        return self.coeffs

    def __lt__(self, other):
        return self.coeffs < other.coeffs

    def to_json(self) -> dict:
        return {"basis": self.basis, "coeffs": [_jsonable(c) for c in self.coeffs]}

    def __str__(self) -> str:
        body = ",".join(str(c) for c in self.coeffs)
        return f"{self.basis}[{body}]"


def _jsonable(c):
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True, eq=True, repr=True)
class PicClass(_ClassOps):
    basis: str
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.basis not in BASES:
            raise DomainError(f"unknown basis tag {self.basis!r}")
        if len(self.coeffs) != N or not all(type(c) is int for c in self.coeffs):
            raise DomainError("a class needs exactly 9 integer coefficients")

    is_integral = True


@dataclass(frozen=True, eq=True, repr=True)
class RatClass(_ClassOps):
    basis: str
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.basis not in BASES:
            raise DomainError(f"unknown basis tag {self.basis!r}")
        if len(self.coeffs) != N:
            raise DomainError("a class needs exactly 9 coefficients")

    is_integral = False


AnyClass = Union[PicClass, RatClass]


def make(basis: str, coeffs: Sequence) -> AnyClass:
    """Build a class, reducing to PicClass whenever all coefficients are integers."""
    if any(isinstance(c, float) for c in coeffs):
        raise DomainError("floating point coefficients are not allowed")
    fr = [Fraction(c) for c in coeffs]
    if all(c.denominator == 1 for c in fr):
        return PicClass(basis, tuple(int(c) for c in fr))
    return RatClass(basis, tuple(fr))


def S(*coeffs) -> AnyClass:
    return make(SURFACE, coeffs)


def X(*coeffs) -> AnyClass:
    return make(FOURFOLD, coeffs)


def unit(basis: str, i: int) -> PicClass:
    """i = 0 gives h (or H); i = 1..8 gives e_i (or E_i)."""
    c = [0] * N
    if i == 0:
        c[0] = 1
    else:
        c[i] = -1
    return PicClass(basis, tuple(c))


def esum(basis: str = SURFACE) -> PicClass:
    return PicClass(basis, (0,) + (-1,) * 8)


def pair(a: AnyClass, b: AnyClass):
    if a.basis != b.basis:
        raise BasisMismatch(f"cannot pair classes in bases {a.basis} and {b.basis}")
    if a.basis not in FORM_HEAD:
        raise BasisMismatch(f"no bilinear form on basis {a.basis}; use divisor_dot_curve")
    ca, cb = a.coeffs, b.coeffs
    v = FORM_HEAD[a.basis] * ca[0] * cb[0] - sum(x * y for x, y in zip(ca[1:], cb[1:]))
    return _norm(v)


def divisor_dot_curve(D: AnyClass, gamma: AnyClass):
    """Fourfold divisor-curve pairing with H.h = 1 and E_i.e_i = -1."""
    if D.basis != FOURFOLD or gamma.basis != FOURFOLD_CURVE:
        raise BasisMismatch(f"need a divisor on X and a curve on X, got {D.basis} and {gamma.basis}")
    ca, cb = D.coeffs, gamma.coeffs
    return _norm(ca[0] * cb[0] - sum(x * y for x, y in zip(ca[1:], cb[1:])))


def _norm(v):
    v = Fraction(v)
    return int(v) if v.denominator == 1 else v


def canonical_class(basis: str = SURFACE) -> PicClass:
    if basis == SURFACE:
        return PicClass(SURFACE, (-3,) + (-1,) * 8)
    if basis == FOURFOLD:
        return PicClass(FOURFOLD, (-5,) + (-3,) * 8)
    raise BasisMismatch(f"no canonical class on basis {basis}")


K_S = canonical_class(SURFACE)
K_X = canonical_class(FOURFOLD)


def _require(x: AnyClass, basis: str) -> None:
    if x.basis != basis:
        raise BasisMismatch(f"expected basis {basis}, got {x.basis}")


def bertini_pullback(g: AnyClass) -> AnyClass:
    _require(g, SURFACE)
    return 2 * pair(g, K_S) * K_S - g


def adjoint_twist(g: AnyClass) -> AnyClass:
    _require(g, SURFACE)
    return g + pair(g, K_S) * K_S


# -- linear maps as 9x9 matrices acting on coefficient vectors -----------

Matrix = list  # list of 9 rows of 9 exact numbers


def matrix_of(fn: Callable[[AnyClass], AnyClass], basis: str = SURFACE) -> Matrix:
    """Matrix M with coeffs(fn(x)) = M @ coeffs(x)."""
    cols = []
    for i in range(N):
        c = [0] * N
        c[i] = 1
        cols.append(list(fn(PicClass(basis, tuple(c))).coeffs))
    return [[cols[j][i] for j in range(N)] for i in range(N)]


def apply(mat: Matrix, x: AnyClass, basis: str | None = None) -> AnyClass:
    out = [sum(a * b for a, b in zip(row, x.coeffs)) for row in mat]
    return make(basis or x.basis, out)


def involution_fixed_subspace() -> list[AnyClass]:
    """Basis of ker(iota* - id) on the surface lattice."""
    mat = matrix_of(bertini_pullback)
    shifted = [[mat[i][j] - int(i == j) for j in range(N)] for i in range(N)]
    return [make(SURFACE, v) for v in exact.nullspace(shifted)]


def eigen_multiplicities(mat: Matrix) -> dict[int, int]:
    """Geometric multiplicities of the eigenvalues +1 and -1."""
    out = {}
    for lam in (1, -1):
        shifted = [[mat[i][j] - lam * int(i == j) for j in range(N)] for i in range(N)]
        out[lam] = N - exact.rank(shifted)
    return out
