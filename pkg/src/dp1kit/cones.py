"""The cones NE, Nef, E, Pi, N and their duals, with exact verification."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import exact
from .classes import ClassKind, array_of, index_of, pairing_matrix, FORM_S
from .errors import DomainError
from .lattice import K_S, SURFACE, AnyClass, PicClass, make, adjoint_twist, pair, unit

K = np.array(K_S.coeffs, dtype=np.int64)


class Rep(enum.Enum):
    GENERATORS = "generators"
    INEQUALITIES = "inequalities"
    BOTH = "both"


@dataclass(frozen=True)
class ConeSpec:
    name: str
    generators: np.ndarray  # (g, 9) int64, possibly empty
    inequality_normals: np.ndarray  # (f, 9) int64, possibly empty
    authoritative_rep: Rep
    generator_kinds: tuple = ()  # (label, count) blocks in row order
    normal_kinds: tuple = ()

    def generator_classes(self) -> list[PicClass]:
        return [_cls(r) for r in self.generators]

    def normal_classes(self) -> list[PicClass]:
        return [_cls(r) for r in self.inequality_normals]

    def normals_of_kind(self, label: str) -> np.ndarray:
        return _block(self.inequality_normals, self.normal_kinds, label)

    def generators_of_kind(self, label: str) -> np.ndarray:
        return _block(self.generators, self.generator_kinds, label)


def _block(arr, kinds, label):
    start = 0
    for lab, n in kinds:
        if lab == label:
            return arr[start:start + n]
        start += n
    raise KeyError(label)


def _cls(row) -> PicClass:
    return PicClass(SURFACE, tuple(int(v) for v in row))


def _empty() -> np.ndarray:
    return np.zeros((0, 9), dtype=np.int64)


def _twice_plus_K(arr: np.ndarray) -> np.ndarray:
    return 2 * arr + K


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.setflags(write=False)
    return a


CONE_NAMES = ("NE", "NEF", "E", "PI", "N", "E_DUAL", "N_DUAL", "PI_DUAL")


@lru_cache(maxsize=None)
def build_cone(name: str) -> ConeSpec:
    ell = array_of(ClassKind.MINUS_ONE)
    con = array_of(ClassKind.CONIC)
    cub = array_of(ClassKind.CUBIC)
    n_ell, n_con, n_cub = len(ell), len(con), len(cub)
    if name == "NE":
        return ConeSpec(name, _frozen(ell), _empty(), Rep.GENERATORS, (("minus_one", n_ell),))
    if name == "NEF":
        return ConeSpec(name, _frozen(np.vstack([con, cub])), _frozen(ell), Rep.BOTH,
                        (("conic", n_con), ("cubic", n_cub)), (("minus_one", n_ell),))
    if name == "E":
        # the cubic normals alone do not cut out E; nefness supplies the other 240
        return ConeSpec(name, _frozen(con), _frozen(np.vstack([ell, _twice_plus_K(cub)])), Rep.BOTH,
                        (("conic", n_con),), (("minus_one", n_ell), ("cubic", n_cub)))
    if name == "PI":
        return ConeSpec(name, _empty(), _frozen(np.vstack([ell, _twice_plus_K(con)])), Rep.INEQUALITIES,
                        (), (("minus_one", n_ell), ("conic", n_con)))
    if name == "N":
        gens = np.vstack([-2 * K + con, -3 * K + cub])
        return ConeSpec(name, _frozen(gens), _frozen(_twice_plus_K(ell)), Rep.BOTH,
                        (("conic", n_con), ("cubic", n_cub)), (("minus_one", n_ell),))
    if name == "E_DUAL":
        return ConeSpec(name, _frozen(np.vstack([ell, _twice_plus_K(cub)])), _frozen(con), Rep.GENERATORS,
                        (("minus_one", n_ell), ("cubic", n_cub)), (("conic", n_con),))
    if name == "N_DUAL":
        return ConeSpec(name, _frozen(_twice_plus_K(ell)), _empty(), Rep.GENERATORS, (("minus_one", n_ell),))
    if name == "PI_DUAL":
        return ConeSpec(name, _frozen(np.vstack([ell, _twice_plus_K(con)])), _empty(), Rep.GENERATORS,
                        (("minus_one", n_ell), ("conic", n_con)))
    raise DomainError(f"unknown cone {name!r}; expected one of {', '.join(CONE_NAMES)}")


# -- membership ------------------------------------------------------------

def integer_direction(x: AnyClass) -> tuple[int, ...]:
    """Positive integer multiple of x with coprime entries."""
    if x.basis != SURFACE:
        raise DomainError("cone membership is defined for surface classes")
    return exact.primitive(x.coeffs)


def pair_rows(rows: np.ndarray, v) -> np.ndarray:
    """Pairings of every row with the integer vector v; exact for any size of v."""
    v = [int(a) for a in v]
    if max((abs(a) for a in v), default=0) < 2**40:
        return (rows @ FORM_S) @ np.array(v, dtype=np.int64)
    obj = rows.astype(object)
    g = np.array([1] + [-1] * 8, dtype=object)
    return (obj * g) @ np.array(v, dtype=object)


def contains(cone: ConeSpec, x: AnyClass, strict: bool = False) -> bool:
    v = integer_direction(x)
    if len(cone.inequality_normals):
        vals = pair_rows(cone.inequality_normals, v)
        return bool((vals > 0).all() if strict else (vals >= 0).all())
    if strict:
        raise DomainError("strict membership needs an inequality description")
    if not len(cone.generators):
        return not any(v)
    return exact.in_cone(v, _rows_as_tuples(cone.generators))


def tight_normals(cone: ConeSpec, x: AnyClass) -> np.ndarray:
    vals = pair_rows(cone.inequality_normals, integer_direction(x))
    return cone.inequality_normals[vals == 0]


def is_ample(L: AnyClass) -> bool:
    if L.basis != SURFACE:
        raise DomainError("ampleness is tested on surface classes")
    return bool((pair_rows(array_of(ClassKind.MINUS_ONE), integer_direction(L)) > 0).all())


# -- duality verification ----------------------------------------------------

@dataclass
class DualReport:
    cone: str
    dual: str
    pairings_nonnegative: bool
    cone_rays: int  # generators verified extremal and pairwise distinct
    dual_rays: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.pairings_nonnegative and not self.failures


def _rows_as_tuples(arr: np.ndarray) -> list[tuple[int, ...]]:
    return [tuple(int(v) for v in r) for r in arr]


def _zero_sets(a: np.ndarray, b: np.ndarray, chunk: int = 512):
    """For each row of a, indices of rows of b pairing to zero; and global nonnegativity."""
    zs = []
    nonneg = True
    for s in range(0, len(a), chunk):
        block = pairing_matrix(a[s:s + chunk], b)
        if nonneg and (block < 0).any():
            nonneg = False
        for row in block:
            zs.append(np.flatnonzero(row == 0))
    return zs, nonneg


def _distinct_rays(arr: np.ndarray) -> int:
    return len({exact.primitive(r) for r in _rows_as_tuples(arr)})


def _extremal_flags(a: np.ndarray, b: np.ndarray, zero_sets) -> list[bool]:
    bt = _rows_as_tuples(b)
    return [exact.int_rank((bt[j] for j in z), stop_at=8) == 8 for z in zero_sets]


def verify_dual_pair(cone: ConeSpec, dual: ConeSpec) -> DualReport:
    a, b = cone.generators, dual.generators
    if not len(a) or not len(b):
        raise DomainError("both cones need generator descriptions")
    za, nonneg = _zero_sets(a, b)
    zb, _ = _zero_sets(b, a)
    fa = _extremal_flags(a, b, za)
    fb = _extremal_flags(b, a, zb)
    failures = []
    failures += [f"{cone.name} generator {_cls(a[i])} is not extremal" for i, ok in enumerate(fa) if not ok]
    failures += [f"{dual.name} generator {_cls(b[i])} is not a facet normal" for i, ok in enumerate(fb) if not ok]
    ra, rb = _distinct_rays(a), _distinct_rays(b)
    if ra != len(a):
        failures.append(f"{cone.name} has proportional generators")
    if rb != len(b):
        failures.append(f"{dual.name} has proportional generators")
    return DualReport(cone.name, dual.name, nonneg, sum(fa) if ra == len(a) else 0,
                      sum(fb) if rb == len(b) else 0, failures)


def facet_generators(cone: ConeSpec, normal: AnyClass) -> list[PicClass]:
    """Generators of a cone lying on the hyperplane normal-perp."""
    vals = pair_rows(cone.generators, integer_direction(normal))
    if (vals < 0).any():
        raise DomainError(f"{normal} is not nonnegative on {cone.name}")
    return [_cls(r) for r in cone.generators[vals == 0]]


def facet_rank(gens: list[PicClass]) -> int:
    return exact.int_rank([g.coeffs for g in gens])


# -- the inclusion chain -----------------------------------------------------

@dataclass
class ChainReport:
    n_in_pi: bool
    pi_in_e: bool
    e_in_nef: bool
    n_in_nef: bool
    nef_witness: bool

    @property
    def ok(self) -> bool:
        return all(vars(self).values())


def _gens_satisfy(cone: ConeSpec, other: ConeSpec) -> bool:
    for s in range(0, len(cone.generators), 2048):
        if (pairing_matrix(cone.generators[s:s + 2048], other.inequality_normals) < 0).any():
            return False
    return True


def cubic_normal_certificate(h: PicClass) -> tuple[PicClass, PicClass] | None:
    """(C, l) with 2h+K = (2C+K) + 2l, C a conic and l a (-1)-class; exhibits 2h+K in Pi-dual."""
    conics = index_of(ClassKind.CONIC)
    for l in array_of(ClassKind.MINUS_ONE):
        lc = _cls(l)
        if pair(lc, h) == 0:
            C = h - lc
            if C.coeffs in conics:
                return C, lc
    return None


def verify_chain() -> ChainReport:
    N, PI, E, NEF = (build_cone(n) for n in ("N", "PI", "E", "NEF"))
    n_in_pi = _gens_satisfy(N, PI)
    # Pi has no generator list: show each inequality of E is a nonnegative
    # combination of inequalities of Pi.  The (-1)-normals are shared; each
    # cubic normal gets an explicit certificate.
    cub, ell = array_of(ClassKind.CUBIC), array_of(ClassKind.MINUS_ONE)
    orth = pairing_matrix(cub, ell) == 0
    conics = index_of(ClassKind.CONIC)
    pi_in_e = bool(orth.any(axis=1).all()) and all(
        tuple(int(v) for v in c) in conics for c in cub - ell[orth.argmax(axis=1)]
    )
    e_in_nef = _gens_satisfy(E, NEF)
    n_in_nef = _gens_satisfy(N, NEF)
    return ChainReport(n_in_pi, pi_in_e, e_in_nef, n_in_nef, nef_decomposition_witness())


def nef_decomposition_witness() -> bool:
    """e1 = ((2 e2 + K) + (2 l' + K)) / 2 with l' = 3h - 2e2 - e3 - ... - e8."""
    e1, e2 = unit(SURFACE, 1), unit(SURFACE, 2)
    lp = make(SURFACE, (3, 0, 2, 1, 1, 1, 1, 1, 1))
    return (2 * e2 + K_S) + (2 * lp + K_S) == 2 * e1


def twist_maps_nef_onto_n() -> bool:
    nef = {_cls(r) for r in build_cone("NEF").generators}
    n = {_cls(r) for r in build_cone("N").generators}
    return {adjoint_twist(g) for g in nef} == n


def pi_interior_rays() -> list[tuple[PicClass, int, bool]]:
    """For each cubic h': (h', rank of tight Pi normals at -K+3h', strictly inside E)."""
    PI, E = build_cone("PI"), build_cone("E")
    cub = array_of(ClassKind.CUBIC)
    pts = 3 * cub - K
    out = []
    pin = pairing_matrix(pts, PI.inequality_normals)
    ein = pairing_matrix(pts, E.inequality_normals)
    norms = _rows_as_tuples(PI.inequality_normals)
    for i in range(len(pts)):
        if (pin[i] < 0).any():
            out.append((_cls(cub[i]), -1, False))
            continue
        r = exact.int_rank((norms[j] for j in np.flatnonzero(pin[i] == 0)), stop_at=9)
        out.append((_cls(cub[i]), r, bool((ein[i] > 0).all())))
    return out
