"""The acceptance suite: eleven exact checks shared by pytest and the CLI."""
from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import bridge, classes, cones, fan, gale, walk
from .classes import ClassKind, array_of, enumerate_kind, pairing_matrix
from .lattice import (
    FOURFOLD, K_S, K_X, SURFACE, PicClass, bertini_pullback, esum, eigen_multiplicities,
    involution_fixed_subspace, make, matrix_of, pair, unit,
)

DEFAULT_SEED = 20240607


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:>2}. {self.title}: {self.detail}"


def _h():
    return unit(SURFACE, 0)


def _e(i):
    return unit(SURFACE, i)


def _S(t):
    return PicClass(SURFACE, tuple(int(v) for v in t))


def criterion_1(seed: int = DEFAULT_SEED) -> CriterionResult:
    parts, ok = [], True
    for kind in ClassKind:
        c = classes.census(kind)
        good = len(c.orbit) == classes.EXPECTED_COUNTS[kind]
        if kind is ClassKind.CUBIC:
            extra = frozenset((-K_S + 2 * l).coeffs for l in enumerate_kind(ClassKind.MINUS_ONE))
            good &= c.orbit <= c.diophantine and c.diophantine - c.orbit == extra == c.non_nef_extra
            parts.append(f"{kind.name} {len(c.orbit)} (= nef part of {len(c.diophantine)} signature solutions)")
        else:
            good &= c.diophantine == c.orbit
            parts.append(f"{kind.name} {len(c.orbit)}")
        ok &= good
    return CriterionResult(1, "enumeration counts and Diophantine = orbit", ok, ", ".join(parts))


def lt_point(t: Fraction):
    h = _h()
    return (1 - t) * h + t * bertini_pullback(h)


def expected_lt_centers() -> dict:
    h, e, E = _h(), [_e(i) for i in range(1, 9)], esum()
    pairs = list(combinations(range(8), 2))
    return {
        Fraction(1, 32): {h},
        Fraction(1, 20): {h - ei for ei in e},
        Fraction(1, 8): {h - e[i] - e[j] for i, j in pairs},
        Fraction(1, 4): set(e),
        Fraction(3, 4): {6 * h - 2 * E - ei for ei in e},
        Fraction(7, 8): {5 * h - 2 * E + e[i] + e[j] for i, j in pairs},
        Fraction(19, 20): {11 * h - 4 * E + ei for ei in e},
        Fraction(31, 32): {bertini_pullback(h)},
    }


def criterion_2(seed: int = DEFAULT_SEED) -> CriterionResult:
    walls = fan.all_walls()
    ok = len(walls) == 19680 and fan.normals_pairwise_nonproportional()
    exp = expected_lt_centers()
    through_ok = all({w.center for w in fan.walls_through(lt_point(t))} == cs for t, cs in exp.items())
    events = fan.lt_parametrization(_h())
    ts = [ev.t for ev in events]
    path_ok = ts == sorted(exp) and all(set(ev.centers) == exp[ev.t] for ev in events)
    ok &= through_ok and path_ok
    return CriterionResult(2, "wall structure and the L_t path", ok,
                           f"{len(walls)} walls, walls_through ok={through_ok}, t = {', '.join(map(str, ts))}")


def criterion_3(seed: int = DEFAULT_SEED) -> CriterionResult:
    chain = cones.verify_chain()
    counts = {}
    ok = chain.ok
    for a, b in (("NE", "NEF"), ("N", "N_DUAL"), ("E", "E_DUAL")):
        rep = cones.verify_dual_pair(cones.build_cone(a), cones.build_cone(b))
        ok &= rep.ok
        counts[a], counts[b] = rep.cone_rays, rep.dual_rays
    ok &= (counts["NE"], counts["NEF"], counts["N_DUAL"], counts["E_DUAL"], counts["E"]) == (240, 19440, 240, 17520, 2160)
    E = cones.build_cone("E")
    h = _h()
    fac = cones.facet_generators(E, 2 * h + K_S)
    simplicial = set(fac) == {h - _e(i) for i in range(1, 9)} and cones.facet_rank(fac) == 8
    ell_counts = set((pairing_matrix(array_of(ClassKind.MINUS_ONE), E.generators) == 0).sum(axis=1).tolist())
    fl = cones.facet_generators(E, _e(1))
    ell_facet = ell_counts == {126} and len(fl) == 126 and cones.facet_rank(fl) == 8
    ok &= simplicial and ell_facet
    detail = (f"chain ok={chain.ok}; rays NE={counts['NE']} N_DUAL={counts['N_DUAL']} NEF={counts['NEF']} "
              f"E_DUAL={counts['E_DUAL']} E={counts['E']}; (2h+K) facet simplicial={simplicial}; "
              f"l facets with 126 conics of rank 8={ell_facet}")
    return CriterionResult(3, "cone chain and duality", ok, detail)


def criterion_4(seed: int = DEFAULT_SEED) -> CriterionResult:
    ell, con, cub = (array_of(k) for k in (ClassKind.MINUS_ONE, ClassKind.CONIC, ClassKind.CUBIC))
    disjoint = set((pairing_matrix(ell, con) == 0).sum(axis=1).tolist())
    orth = set((pairing_matrix(con, ell) == 0).sum(axis=1).tolist())
    vals = pairing_matrix(np.array([_h().coeffs]), cub)[0]
    top = int(vals.max())
    arg = [_S(cub[i]) for i in np.flatnonzero(vals == top)]
    ok = disjoint == {126} and orth == {14} and top == 17 and arg == [bertini_pullback(_h())]
    return CriterionResult(4, "incidence counts", ok,
                           f"disjoint conics per l {disjoint}, orthogonal l per conic {orth}, max h.h' = {top} at {arg[0]}")


def criterion_5(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = random.Random(seed)
    h = _h()
    ids = bridge.rho(-K_S) == -K_X and all(bridge.rho(h - _e(i)) == 2 * unit(FOURFOLD, i) for i in range(1, 9))
    roots = array_of(ClassKind.ROOT)
    img = np.array([bridge.rho_half(_S(r)).coeffs for r in roots], dtype=np.int64)
    dolg = np.diag([3] + [-1] * 8).astype(np.int64)
    iso = bool(((img @ dolg @ img.T) == pairing_matrix(roots, roots)).all())
    rand = lambda: make(SURFACE, [rng.randint(-30, 30) for _ in range(9)])
    integ = all(bridge.rho_half(x).is_integral == (pair(K_S, x) % 2 == 0) for x in (rand() for _ in range(1000)))
    adj = all(bridge.adjointness_holds(rand(), bridge.curve(*[rng.randint(-30, 30) for _ in range(9)]))
              for _ in range(1000))
    ok = ids and iso and integ and adj
    return CriterionResult(5, "determinant bridge", ok,
                           f"identities={ids}, isometry on 240x240 roots={iso}, integrality on 1000={integ}, adjointness on 1000={adj}")


def criterion_6(seed: int = DEFAULT_SEED) -> CriterionResult:
    H = unit(FOURFOLD, 0)
    img = bridge.bertini_on_X(H)
    target = 49 * H - 30 * esum(FOURFOLD)
    auto = bridge.XAutomorphism(bridge.bertini_x_matrix())
    basis = [unit(FOURFOLD, i) for i in range(9)]
    invol = all(auto(auto(b)) == b for b in basis)
    form = auto.preserves_form() and auto.fixes_canonical()
    fixS = involution_fixed_subspace()
    fixS_ok = len(fixS) == 1 and cones.integer_direction(fixS[0]) in (tuple(K_S.coeffs), tuple(-c for c in K_S.coeffs))
    multS = eigen_multiplicities(matrix_of(bertini_pullback))
    multX = eigen_multiplicities([list(r) for r in auto.matrix])
    from . import exact
    shifted = [[auto.matrix[i][j] - int(i == j) for j in range(9)] for i in range(9)]
    fixX = exact.nullspace(shifted)
    fixX_ok = len(fixX) == 1 and exact.primitive(fixX[0]) in (tuple(K_X.coeffs), tuple(-c for c in K_X.coeffs))
    bianti = all(bridge.bianticanonical_pairing(C) for C in enumerate_kind(ClassKind.CONIC))
    ok = img == target and invol and form and fixS_ok and fixX_ok and bianti and multS == multX == {1: 1, -1: 8}
    return CriterionResult(6, "Bertini involution on X", ok,
                           f"iota_X*(H) = {img}, involution={invol}, form-preserving={form}, "
                           f"fixed lines canonical={fixS_ok and fixX_ok}, E_C + iota*E_C = -2K for 2160 conics={bianti}")


def criterion_7(seed: int = DEFAULT_SEED) -> CriterionResult:
    conics = enumerate_kind(ClassKind.CONIC)
    formula = all(bridge.fixed_divisor_class(C) == bridge.rho_half(C) for C in conics)
    gens = bridge.effective_semigroup_generators()
    pairings = {pair(g, -K_X) for g in gens}
    ok = formula and len(gens) == 2401 and len(set(gens)) == 2401 and pairings == {3}
    return CriterionResult(7, "fixed divisors and semigroup generators", ok,
                           f"formula = rho/2 on 2160 conics: {formula}; {len(gens)} generators, -K_X pairings {pairings}")


def criterion_8(seed: int = DEFAULT_SEED) -> CriterionResult:
    h, e = _h(), [_e(i) for i in range(1, 9)]
    pairs = list(combinations(range(8), 2))
    log = walk.walk(-K_S + 2 * h, -K_S)
    batches = log.batches()
    xy = (len(batches) == 2
          and batches[0][0] is fan.Transformation.FLIP_Z_TO_P and set(batches[0][1]) == {h - e[i] - e[j] for i, j in pairs}
          and batches[1][0] is fan.Transformation.FLIP_Z_TO_P and set(batches[1][1]) == set(e)
          and len(batches[0][1]) == 28 and len(batches[1][1]) == 8)
    inv_ok = log.start == walk.X_INVARIANTS and log.final == walk.Y_INVARIANTS
    full = walk.walk(-K_S + 4 * h, -K_S)
    full_ok = full.start == walk.P4_INVARIANTS and full.final == walk.Y_INVARIANTS and full.entries[0].after == walk.X_INVARIANTS
    chi = walk.chi_tangent(walk.Y_INVARIANTS)
    blog, summary = walk.bertini_factorization()
    E = esum()
    bb = blog.batches()
    FX = unit(FOURFOLD, 0)
    contracted_expected = {10 * FX - 6 * esum(FOURFOLD) - unit(FOURFOLD, i) for i in range(1, 9)}
    bert = (len(bb) == 3
            and bb[0][0] is fan.Transformation.FLIP_P_TO_Z and set(bb[0][1]) == {6 * h - 2 * E - ei for ei in e}
            and bb[1][0] is fan.Transformation.FLIP_P_TO_Z and set(bb[1][1]) == {5 * h - 2 * E + e[i] + e[j] for i, j in pairs}
            and bb[2][0] is fan.Transformation.CONTRACT_E_TO_POINT and len(bb[2][1]) == 8
            and set(summary.contracted_divisors) == contracted_expected
            and (summary.degree, summary.multiplicity, summary.dim_V) == (49, 30, 4)
            and summary.contracted_degrees == [10] * 8)
    ok = xy and inv_ok and full_ok and chi == -8 and bert
    return CriterionResult(8, "surgery ledgers", ok,
                           f"X->Y 28+8 flips={xy}, invariants {log.start.as_tuple()} -> {log.final.as_tuple()}, "
                           f"chi(T_Y) = {chi}, Bertini 8+28 flips then 8 contractions of 10H-6sumE-E_i={bert}")


def surface_examples() -> dict:
    h, e, E = _h(), [None] + [_e(i) for i in range(1, 9)], esum()
    return {
        2: 2 * h - e[4] - e[5] - e[6] - e[7] - e[8],
        3: 3 * h - E - e[1] + e[8],
        4: 4 * h - E - e[1] - e[2] - e[3],
        5: 5 * h - 2 * E + e[7] + e[8],
        6: 6 * h - 2 * E - e[1],
    }


def criterion_9(seed: int = DEFAULT_SEED) -> CriterionResult:
    h = _h()
    ex = surface_examples()
    degrees = tuple(walk.special_surface_profile(h, ex[d]).degree for d in range(2, 7))
    four = walk.surface_degree_ledger(8, [4, 4, 4] + [1] * 10)
    five = walk.surface_degree_ledger(11, [4] * 6 + [1] * 15)
    dec = {k: walk.surface_ledger_decomposition(h, ex[k]) for k in (4, 5, 6)}
    rec_ok = dec[4] == (8, [4, 4, 4] + [1] * 10) and dec[5] == (11, [4] * 6 + [1] * 15)
    six = walk.surface_degree_ledger(*dec[6])
    ok = degrees == (1, 4, 6, 10, 15) and four == 6 and five == 10 and rec_ok and six == 15
    return CriterionResult(9, "special surfaces", ok,
                           f"degrees {degrees}; ledgers h.l=4 -> {four}, h.l=5 -> {five}, "
                           f"h.l=6 (14; 4x10, 1x21) -> {six}")


def criterion_10(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = random.Random(seed)
    stats = dict(orth=0, minors=0, prop=0, double=0)
    n = 50
    for _ in range(n):
        A = gale.random_configuration(rng)
        B = gale.associate(A)
        stats["orth"] += gale.orthogonal(A, B)
        stats["minors"] += gale.verify_minor_identity(A, B).ok
        stats["prop"] += (not gale.general_linear_position(A)) or gale.general_linear_position(B)
        stats["double"] += gale.same_row_space(gale.associate(B), A)
    ok = all(v == n for v in stats.values())
    return CriterionResult(10, "Gale duality", ok, f"{n} configurations: " + ", ".join(f"{k} {v}/{n}" for k, v in stats.items()))


def criterion_11(seed: int = DEFAULT_SEED) -> CriterionResult:
    ells = enumerate_kind(ClassKind.MINUS_ONE)
    seen: dict[int, set] = {}
    for a in ells:
        for b in ells:
            if a != b:
                r = classes.locus_intersection_count(a, b)
                seen.setdefault(r.pairing, set()).add(r.count)
    ok = seen == {0: {0}, 1: {0}, 2: {1}, 3: {3}}
    return CriterionResult(11, "locus intersection counts", ok,
                           f"pairing -> count over {len(ells) * (len(ells) - 1)} ordered pairs: {dict(sorted(seen.items()))}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


def _run_one(args):
    i, seed = args
    return CRITERIA[i](seed)


def threads() -> int:
    try:
        return max(1, int(os.environ.get("TOOLKIT_THREADS", "1")))
    except ValueError:
        return 1


def run_all(seed: int = DEFAULT_SEED) -> list[CriterionResult]:
    jobs = [(i, seed) for i in range(len(CRITERIA))]
    n = threads()
    if n > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            return list(pool.map(_run_one, jobs))
    return [_run_one(j) for j in jobs]
