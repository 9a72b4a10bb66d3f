"""Walls (2D+K_S)-perp, chambers as sign vectors, and crossings along segments."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import groupby
from typing import Optional

import numpy as np

from . import exact
from .classes import ClassKind, array_of, index_of
from .cones import build_cone, contains, is_ample, pair_rows
from .errors import DomainError, NotAmple, OnWall, OutsideEffectiveCone
from .lattice import K_S, SURFACE, AnyClass, PicClass, make, pair


class WallKind(enum.Enum):
    CURVE = ClassKind.MINUS_ONE
    CONIC = ClassKind.CONIC
    CUBIC = ClassKind.CUBIC


@dataclass(frozen=True)
class Wall:
    kind: WallKind
    center: PicClass

    @property
    def normal(self) -> PicClass:
        return 2 * self.center + K_S

    def to_json(self) -> dict:
        return {"kind": self.kind.name, "center": self.center.to_json(), "normal": self.normal.to_json()}


@lru_cache(maxsize=None)
def all_walls() -> tuple[Wall, ...]:
    out = []
    for wk in WallKind:
        out += [Wall(wk, PicClass(SURFACE, tuple(int(v) for v in r))) for r in array_of(wk.value)]
    return tuple(out)


@lru_cache(maxsize=None)
def wall_normals() -> np.ndarray:
    arr = np.vstack([2 * array_of(wk.value) + np.array(K_S.coeffs) for wk in WallKind]).astype(np.int64)
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=None)
def wall_kind_slices() -> dict:
    out, start = {}, 0
    for wk in WallKind:
        n = len(array_of(wk.value))
        out[wk] = slice(start, start + n)
        start += n
    return out


def normals_pairwise_nonproportional() -> bool:
    prims = {exact.primitive([int(v) for v in r]) for r in wall_normals()}
    prims_up_to_sign = {max(p, tuple(-x for x in p)) for p in prims}
    return len(prims_up_to_sign) == len(wall_normals())


def _common_scale(*xs: AnyClass) -> list[tuple[int, ...]]:
    """Integer vectors obtained by one common positive rescaling of all inputs."""
    den = 1
    for x in xs:
        for c in x.coeffs:
            q = Fraction(c).denominator
            den = den * q // np.gcd(den, q)
    return [tuple(int(Fraction(c) * den) for c in x.coeffs) for x in xs]


def wall_values(L: AnyClass) -> np.ndarray:
    if L.basis != SURFACE:
        raise DomainError("walls live on the surface side")
    return pair_rows(wall_normals(), exact.primitive(L.coeffs))


def walls_through(L: AnyClass) -> list[Wall]:
    walls = all_walls()
    return [walls[i] for i in np.flatnonzero(wall_values(L) == 0)]


# -- chambers -----------------------------------------------------------------

@dataclass(frozen=True)
class Label:
    name: str  # C_h, B_h, F_h or CENTRAL
    witness: Optional[PicClass]


@dataclass(frozen=True, eq=False)
class Chamber:
    signs: bytes = field(repr=False)  # one byte per wall, 1 for '+', 0 for '-'
    representative: AnyClass
    label: Optional[Label] = None

    def __eq__(self, other):
        return isinstance(other, Chamber) and self.signs == other.signs

    def __hash__(self):
        return hash(self.signs)

    def negative_walls(self) -> list[Wall]:
        walls = all_walls()
        arr = np.frombuffer(self.signs, dtype=np.uint8)
        return [walls[i] for i in np.flatnonzero(arr == 0)]


def _perturb_toward_anticanonical(L: AnyClass, vals: np.ndarray) -> AnyClass:
    """L + eps(-K_S) with eps small enough that no nonzero sign changes.

    Every wall normal pairs positively with -K_S, so positive values stay
    positive and zeros become positive.  ``vals`` are the wall values of the
    primitive direction of L.
    """
    if not (vals == 0).any():
        return L
    prim = exact.primitive(L.coeffs)
    ratio = next(Fraction(c) / p for c, p in zip(L.coeffs, prim) if p)
    d = pair_rows(wall_normals(), (-K_S).coeffs)
    neg = vals < 0
    eps = Fraction(1)
    if neg.any():
        eps = min(Fraction(int(-v), int(w)) for v, w in zip(vals[neg], d[neg])) / 2
    return ratio * (make(SURFACE, prim) + eps * (-K_S))


def _check_ample_in_E(L: AnyClass) -> None:
    if not is_ample(L):
        raise NotAmple(f"{L} is not ample")
    E = build_cone("E")
    if not contains(E, L):
        raise OutsideEffectiveCone(f"{L} is not in the cone E")
    vals = wall_values(L)
    cubic_zero = int((vals[wall_kind_slices()[WallKind.CUBIC]] == 0).sum())
    if cubic_zero > 1:
        raise NotAmple(f"{L} lies on {cubic_zero} cubic walls; only facet interiors are allowed")


def chamber_of(L: AnyClass) -> Chamber:
    _check_ample_in_E(L)
    vals = wall_values(L)
    signs = (vals >= 0).astype(np.uint8).tobytes()
    rep = _perturb_toward_anticanonical(L, vals)
    c = Chamber(signs, rep)
    return Chamber(signs, rep, label_chamber(c))


def _sign_bytes(L: AnyClass) -> bytes:
    return (wall_values(L) >= 0).astype(np.uint8).tobytes()


def label_representative(name: str, h: AnyClass) -> AnyClass:
    return {"C_h": -K_S + 4 * h, "B_h": -K_S + 2 * h, "F_h": -2 * K_S + h, "CENTRAL": -K_S}[name]


def label_chamber(c: Chamber) -> Optional[Label]:
    """Match c against the chambers of -K+4h', -K+2h', -2K+h' and -K.

    Those chambers have easily described negative sets: for -K+4h the walls
    of the 36 (-1)-classes l with l.h <= 1 and of the 8 conics with C.h = 1;
    for -K+2h the same 36 curve walls only; for -2K+h the 8 curve walls with
    l.h = 0.  The sums of the negative centers determine h, so one candidate
    per label is tested by a full sign-vector comparison.
    """
    arr = np.frombuffer(c.signs, dtype=np.uint8)
    if arr.all():
        return Label("CENTRAL", None)
    sl = wall_kind_slices()
    normals = wall_normals()
    K = np.array(K_S.coeffs)
    neg_curve = normals[sl[WallKind.CURVE]][arr[sl[WallKind.CURVE]] == 0]
    neg_conic = normals[sl[WallKind.CONIC]][arr[sl[WallKind.CONIC]] == 0]
    if (arr[sl[WallKind.CUBIC]] == 0).any():
        return None
    centers_sum = lambda rows: (rows - K).sum(axis=0) // 2 if len(rows) else None
    pattern = (len(neg_curve), len(neg_conic))
    if pattern == (36, 8):
        name, num, den = "C_h", centers_sum(neg_conic) + K, 5
    elif pattern == (36, 0):
        name, num, den = "B_h", centers_sum(neg_curve) + 6 * K, 10
    elif pattern == (8, 0):
        name, num, den = "F_h", centers_sum(neg_curve) - K, 3
    else:
        return None
    if (num % den).any():
        return None
    h = tuple(int(v) for v in num // den)
    if h not in index_of(ClassKind.CUBIC):
        return None
    hc = PicClass(SURFACE, h)
    if _sign_bytes(label_representative(name, hc)) != c.signs:
        return None
    return Label(name, hc)


# -- crossings --------------------------------------------------------------------

class Transformation(enum.Enum):
    FLIP_P_TO_Z = "flip replacing P_l (P^2) by Z_l (P^1)"
    FLIP_Z_TO_P = "flip replacing Z_l (P^1) by P_l (P^2)"
    CONTRACT_E_TO_POINT = "contraction of E_C (P^3) to the point [F_C]"
    BLOWUP_POINT = "blow-up of the point [F_C] with exceptional divisor E_C"
    EXIT_E = "leaving E: moduli empty beyond"
    ENTER_E = "entering E"


_TRANSFORM = {
    (WallKind.CURVE, +1): Transformation.FLIP_P_TO_Z,
    (WallKind.CURVE, -1): Transformation.FLIP_Z_TO_P,
    (WallKind.CONIC, +1): Transformation.CONTRACT_E_TO_POINT,
    (WallKind.CONIC, -1): Transformation.BLOWUP_POINT,
    (WallKind.CUBIC, +1): Transformation.EXIT_E,
    (WallKind.CUBIC, -1): Transformation.ENTER_E,
}

INVERSE = {
    Transformation.FLIP_P_TO_Z: Transformation.FLIP_Z_TO_P,
    Transformation.FLIP_Z_TO_P: Transformation.FLIP_P_TO_Z,
    Transformation.CONTRACT_E_TO_POINT: Transformation.BLOWUP_POINT,
    Transformation.BLOWUP_POINT: Transformation.CONTRACT_E_TO_POINT,
    Transformation.EXIT_E: Transformation.ENTER_E,
    Transformation.ENTER_E: Transformation.EXIT_E,
}


@dataclass(frozen=True)
class Crossing:
    wall: Wall
    from_sign: int  # sign of the wall normal before the crossing
    transformation: Transformation


@dataclass(frozen=True)
class CrossingEvent:
    t: Fraction
    crossings: tuple[Crossing, ...]

    @property
    def kinds(self) -> set:
        return {c.transformation for c in self.crossings}

    @property
    def centers(self) -> list[PicClass]:
        return [c.wall.center for c in self.crossings]

    def to_json(self) -> dict:
        return {
            "t": str(self.t),
            "walls": [c.wall.to_json() for c in self.crossings],
            "kind": sorted(k.name for k in self.kinds),
        }


def cross_path(L0: AnyClass, L1: AnyClass, check_endpoints: bool = True) -> list[CrossingEvent]:
    """Walls met by the segment (1-t)L0 + tL1 for 0 < t < 1, bundled by t.

    With check_endpoints=False the ampleness and E-membership of the endpoints
    is not required, which lets the segment run between two cubics.
    """
    if L0.basis != SURFACE or L1.basis != SURFACE:
        raise DomainError("paths live on the surface side")
    if check_endpoints:
        for L in (L0, L1):
            _check_ample_in_E(L)
    if L0 == L1:
        return []
    v0, v1 = _common_scale(L0, L1)
    a0 = pair_rows(wall_normals(), v0)
    a1 = pair_rows(wall_normals(), v1)
    walls = all_walls()
    both = np.flatnonzero((a0 == 0) & (a1 == 0))
    if len(both):
        raise OnWall(f"segment lies inside the wall {walls[both[0]].normal}")
    if check_endpoints:
        on = np.flatnonzero((a0 == 0) | (a1 == 0))
        if len(on):
            raise OnWall(f"endpoint lies on the wall with center {walls[on[0]].center}")
    change = np.flatnonzero(((a0 > 0) & (a1 < 0)) | ((a0 < 0) & (a1 > 0)))
    items = []
    for i in change:
        w = walls[i]
        t = Fraction(int(a0[i]), int(a0[i] - a1[i]))
        s = 1 if a0[i] > 0 else -1
        items.append((t, w.kind.name, w.center.coeffs, Crossing(w, s, _TRANSFORM[(w.kind, s)])))
    items.sort(key=lambda x: x[:3])
    return [CrossingEvent(t, tuple(x[3] for x in grp)) for t, grp in groupby(items, key=lambda x: x[0])]


def lt_parametrization(h: AnyClass) -> list[CrossingEvent]:
    """Crossings along L_t = (1-t)h + t iota*(h) for 0 < t < 1."""
    from .lattice import bertini_pullback
    return cross_path(h, bertini_pullback(h), check_endpoints=False)


# -- moduli status -------------------------------------------------------------

class Status(enum.Enum):
    EMPTY = "empty"
    P4 = "P4"
    SMOOTH_4FOLD = "smooth fourfold"


class LocusKind(enum.Enum):
    P_ELL = "P^2 with normal bundle O(-1)^2"
    Z_ELL = "P^1 with normal bundle O(-1)^3"
    E_C = "P^3 with normal bundle O(-1)"
    F_C_POINT = "point"


EXT_DIMENSIONS = {LocusKind.P_ELL: (2, 3), LocusKind.Z_ELL: (2, 3), LocusKind.E_C: (1, 4), LocusKind.F_C_POINT: (1, 4)}


@dataclass(frozen=True)
class SpecialLocus:
    kind: LocusKind
    cls: PicClass

    @property
    def ext_dimensions(self) -> tuple[int, int]:
        return EXT_DIMENSIONS[self.kind]


@dataclass(frozen=True)
class ModuliStatus:
    status: Status
    chamber: Optional[Chamber] = None
    loci: tuple[SpecialLocus, ...] = ()
    note: str = ""


def moduli_status(L: AnyClass) -> ModuliStatus:
    if not is_ample(L):
        raise NotAmple(f"{L} is not ample")
    if not contains(build_cone("E"), L):
        return ModuliStatus(Status.EMPTY)
    c = chamber_of(L)
    if c.label is not None and c.label.name == "C_h":
        return ModuliStatus(Status.P4, c)
    loci = []
    for w in walls_through(L):
        if w.kind is WallKind.CURVE:
            loci.append(SpecialLocus(LocusKind.P_ELL, w.center))
        elif w.kind is WallKind.CONIC:
            loci.append(SpecialLocus(LocusKind.E_C, w.center))
    note = f"slope moduli image of the exceptional locus: {len(loci)} distinct points" if loci else ""
    return ModuliStatus(Status.SMOOTH_4FOLD, c, tuple(loci), note)
