"""Surgery ledgers along segments in the stability fan, fourfold invariants,
and the special surfaces swept out by the planes P_l."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .bridge import fixed_divisor_class, gamma_tilde_class, in_adapted_basis, rho_half, bertini_on_X
from .classes import ClassKind, enumerate_kind, locus_intersection_count, require_kind
from .errors import DomainError
from .fan import (
    CrossingEvent, Transformation, WallKind, chamber_of, cross_path, label_representative,
)
from .lattice import FOURFOLD, FOURFOLD_CURVE, K_S, K_X, SURFACE, AnyClass, PicClass, bertini_pullback, make, pair, unit


@dataclass(frozen=True)
class FourfoldInvariants:
    b2: int
    b3: int
    b4: int
    K4: int
    h0_minusK: int
    h12: int = 0
    h13: int = 0

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.b2, self.b3, self.b4, self.K4, self.h0_minusK)

    def shifted(self, d: "Delta", sign: int = 1) -> "FourfoldInvariants":
        return replace(self, b2=self.b2 + sign * d.b2, b4=self.b4 + sign * d.b4,
                       K4=self.K4 + sign * d.K4, h0_minusK=self.h0_minusK + sign * d.h0)


@dataclass(frozen=True)
class Delta:
    b2: int = 0
    b4: int = 0
    K4: int = 0
    h0: int = 0


ZERO = FourfoldInvariants(0, 0, 0, 0, 0)
P4_INVARIANTS = FourfoldInvariants(1, 0, 1, 625, 126)
X_INVARIANTS = FourfoldInvariants(9, 0, 9, -23, 6)
Y_INVARIANTS = FourfoldInvariants(9, 0, 45, 13, 6)

# invariants the ledger may start from, keyed by chamber label
CERTIFIED = {"C_h": P4_INVARIANTS, "B_h": X_INVARIANTS, "CENTRAL": Y_INVARIANTS}

BLOWUP_POINT = Delta(b2=1, b4=1, K4=-81, h0=-15)
FLIP_LINE_TO_PLANE = Delta(b4=1, K4=1)

DELTAS = {
    Transformation.BLOWUP_POINT: (BLOWUP_POINT, 1),
    Transformation.CONTRACT_E_TO_POINT: (BLOWUP_POINT, -1),
    Transformation.FLIP_Z_TO_P: (FLIP_LINE_TO_PLANE, 1),
    Transformation.FLIP_P_TO_Z: (FLIP_LINE_TO_PLANE, -1),
}


def chi_tangent(inv: FourfoldInvariants) -> int:
    return 27 - 5 * inv.h0_minusK + inv.K4 + 3 * inv.b2 - inv.h12 - inv.b4 + 3 * inv.h13


@dataclass
class LogEntry:
    event: CrossingEvent
    transformation: Transformation
    count: int
    after: FourfoldInvariants
    certified: bool


@dataclass
class SurgeryLog:
    start: FourfoldInvariants
    absolute: bool  # False when invariants are deltas from an uncertified start
    entries: list[LogEntry] = field(default_factory=list)
    empty: bool = False  # the path left E

    @property
    def final(self) -> FourfoldInvariants:
        return self.entries[-1].after if self.entries else self.start

    def batches(self) -> list[tuple[Transformation, list[PicClass]]]:
        return [(e.transformation, e.event.centers) for e in self.entries]

    def to_json(self) -> dict:
        return {
            "absolute": self.absolute,
            "start": list(self.start.as_tuple()),
            "events": [
                {
                    "t": str(e.event.t),
                    "walls": [c.to_json() for c in e.event.centers],
                    "kind": e.transformation.name,
                    "count": e.count,
                    "invariants": list(e.after.as_tuple()),
                    "certified": e.certified,
                }
                for e in self.entries
            ],
            "empty": self.empty,
        }


def _label_at(L: AnyClass) -> Optional[str]:
    try:
        c = chamber_of(L)
    except DomainError:
        return None
    return c.label.name if c.label else None


def walk(L0: AnyClass, L1: AnyClass) -> SurgeryLog:
    """Replay the surgeries met along the segment from L0 to L1."""
    events = cross_path(L0, L1)
    lab0 = _label_at(L0)
    start = CERTIFIED.get(lab0, ZERO)
    log = SurgeryLog(start, lab0 in CERTIFIED)
    inv = start
    for i, ev in enumerate(events):
        kinds = ev.kinds
        if len(kinds) != 1:
            raise DomainError(f"mixed transformations at t={ev.t} are not bookkept")
        (tr,) = kinds
        if tr in (Transformation.EXIT_E, Transformation.ENTER_E):
            log.empty = tr is Transformation.EXIT_E
            break
        d, s = DELTAS[tr]
        for _ in ev.crossings:
            inv = inv.shifted(d, s)
        nxt = events[i + 1].t if i + 1 < len(events) else Fraction(1)
        mid = (ev.t + nxt) / 2
        point = (1 - mid) * L0 + mid * L1
        lab = _label_at(point)
        log.entries.append(LogEntry(ev, tr, len(ev.crossings), inv, log.absolute and lab in CERTIFIED))
    return log


# -- the Bertini route --------------------------------------------------------

@dataclass
class BertiniSummary:
    degree: int
    multiplicity: int
    dim_V: int
    contracted_divisors: list[PicClass]
    contracted_degrees: list[int]


def bertini_factorization(h: AnyClass | None = None) -> tuple[SurgeryLog, BertiniSummary]:
    """From the central chamber to the outer chamber of iota*(h): two batches of flips, then contractions."""
    h = h if h is not None else unit(SURFACE, 0)
    hp = bertini_pullback(h)
    log = walk(-K_S, label_representative("C_h", hp))
    contracted = []
    for e in log.entries:
        if e.transformation is Transformation.CONTRACT_E_TO_POINT:
            contracted += [fixed_divisor_class(C) for C in e.event.centers]
    image = bertini_on_X(unit(FOURFOLD, 0))
    mult = set(image.m)
    if len(mult) != 1:
        raise AssertionError("iota_X*(H) should have equal multiplicities")
    summary = BertiniSummary(
        degree=image.d,
        multiplicity=mult.pop(),
        dim_V=4,  # iota_X*|H| is the pullback of the five-dimensional space of linear forms
        contracted_divisors=contracted,
        contracted_degrees=[D.d for D in contracted],
    )
    return log, summary


# -- special surfaces ------------------------------------------------------------

@dataclass(frozen=True)
class Singularity:
    tag: str  # ONE_THIRD_1_1, CONE_VERTEX or TRIPLE_CURVE
    count: int = 1
    curve: str = ""


@dataclass(frozen=True)
class SurfaceProfile:
    d: int
    description: str
    degree: int
    singularities: tuple[Singularity, ...]


_PROFILES = {
    2: ("plane", 1, ()),
    3: ("cone over a rational normal quartic", 4, (Singularity("CONE_VERTEX", 1),)),
    4: ("normal surface", 6, (Singularity("ONE_THIRD_1_1", 5),)),
    5: ("surface with a triple line", 10,
        (Singularity("ONE_THIRD_1_1", 6), Singularity("TRIPLE_CURVE", 1, "line through two blown-up points"))),
    6: ("surface with a triple quartic", 15,
        (Singularity("ONE_THIRD_1_1", 1), Singularity("TRIPLE_CURVE", 1, "rational normal quartic gamma_i"))),
}


def special_surface_profile(hmark: AnyClass, ell: AnyClass) -> SurfaceProfile:
    require_kind(hmark, ClassKind.CUBIC)
    require_kind(ell, ClassKind.MINUS_ONE)
    d = pair(hmark, ell)
    if d <= 1:
        raise DomainError(f"h.l = {d} <= 1: P_l lies in the indeterminacy locus")
    if d not in _PROFILES:
        raise AssertionError(f"h.l = {d} > 6 is impossible for a cubic and a (-1)-class")
    desc, deg, sing = _PROFILES[d]
    return SurfaceProfile(d, desc, deg, sing)


def surface_degree_ledger(line_coeff: int, exceptional_multiplicities: list[int]) -> int:
    return line_coeff * line_coeff - sum(b * b for b in exceptional_multiplicities)


def surface_ledger_decomposition(hmark: AnyClass, ell: AnyClass) -> tuple[int, list[int]]:
    """Restriction of H to the blown-up plane, as (a; b_1, ...).

    The line coefficient is the degree of the transform of a general line of
    P_l.  The plane meets the loci flipped on the way from X (the planes of the
    e_i, whose flipped curves are quartics, and those of the l_ab, whose
    flipped curves are lines) in the number of points given by the incidence
    count; each such point contributes the degree of the corresponding curve.
    Valid for h.l in {2, 4, 5, 6}; for h.l = 3 a quartic lies on the surface.
    """
    require_kind(ell, ClassKind.MINUS_ONE)
    lx = in_adapted_basis(hmark, ell)
    d = lx.d
    if d not in (2, 4, 5, 6):
        raise DomainError(f"no point-blow-up ledger for h.l = {d}")
    a = gamma_tilde_class(hmark, ell).d
    h = unit(SURFACE, 0)
    e = [unit(SURFACE, i) for i in range(1, 9)]
    mults: list[int] = []
    for ei in e:
        if ei != lx:
            mults += [4] * locus_intersection_count(lx, ei).count
    for i in range(8):
        for j in range(i + 1, 8):
            lij = h - e[i] - e[j]
            if lij != lx:
                mults += [1] * locus_intersection_count(lx, lij).count
    return a, sorted(mults, reverse=True)


# -- curves on X -------------------------------------------------------------------

def special_curve_census(max_degree: int = 5) -> list[tuple[AnyClass, int]]:
    """Rational curves a*h - sum over n points, through n general points of P^4.

    A rational curve of degree a < 4 spans at most a P^a, which contains at most
    a+1 general points; in general the count is bounded by the dimension
    5a + 1 of rational curves of degree a, each point imposing 3 conditions.
    Returns (class, -K_X . class) for the realizable classes, one per point set.
    """
    from itertools import combinations
    out = []
    for a in range(1, max_degree + 1):
        cap = min(a + 1 if a < 4 else 8, (5 * a + 1) // 3)
        for n in range(0, cap + 1):
            for pts in combinations(range(8), n):
                g = make(FOURFOLD_CURVE, [a] + [1 if i in pts else 0 for i in range(8)])
                out.append((g, 5 * a - 3 * n))
    out += [(make(FOURFOLD_CURVE, [0] + [-1 if j == i else 0 for j in range(8)]), 1) for i in range(8)]
    return out


def negative_curves() -> list[AnyClass]:
    return sorted(g for g, k in special_curve_census() if k <= 0)
