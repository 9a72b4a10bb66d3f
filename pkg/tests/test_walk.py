from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from dp1kit import fan, walk
from dp1kit.classes import ClassKind, enumerate_kind
from dp1kit.errors import DomainError
from dp1kit.fan import Transformation
from dp1kit.lattice import K_S, SURFACE, PicClass, unit

h = unit(SURFACE, 0)
CUBICS = enumerate_kind(ClassKind.CUBIC)


def test_central_to_p4():
    log = walk.walk(-K_S, -K_S + 4 * h)
    assert log.absolute and log.start == walk.Y_INVARIANTS
    assert [e.transformation for e in log.entries] == [Transformation.FLIP_P_TO_Z] * 2 + [Transformation.CONTRACT_E_TO_POINT]
    assert log.entries[1].after == walk.X_INVARIANTS
    assert log.final == walk.P4_INVARIANTS
    assert [e.certified for e in log.entries] == [False, True, True]


def test_reverse_walk_restores_invariants():
    log = walk.walk(-K_S + 4 * h, -K_S)
    assert log.start == walk.P4_INVARIANTS and log.final == walk.Y_INVARIANTS


@settings(max_examples=10, deadline=None)
@given(st.integers(0, len(CUBICS) - 1), st.integers(0, len(CUBICS) - 1))
def test_round_trip_returns_to_start(i, j):
    L0 = -K_S + 4 * CUBICS[i]
    L1 = -2 * K_S + CUBICS[j]
    assume(all((fan.wall_values(L) != 0).all() for L in (L0, L1)))
    there = walk.walk(L0, L1)
    back = walk.walk(L1, L0)
    assert there.start == walk.P4_INVARIANTS
    total = there.start
    for log in (there, back):
        for e in log.entries:
            d, s = walk.DELTAS[e.transformation]
            for _ in range(e.count):
                total = total.shifted(d, s)
    assert total == there.start


def test_chi_tangent_is_preserved_by_flips():
    assert walk.chi_tangent(walk.Y_INVARIANTS) == walk.chi_tangent(walk.X_INVARIANTS) == -8
    assert walk.chi_tangent(walk.P4_INVARIANTS) == 24


def test_bertini_factorization():
    log, s = walk.bertini_factorization()
    assert [e.count for e in log.entries] == [8, 28, 8]
    assert (s.degree, s.multiplicity, s.dim_V) == (49, 30, 4)
    assert s.contracted_degrees == [10] * 8


@pytest.mark.parametrize("ell,d,degree", [
    ((2, 1, 1, 1, 1, 1, 0, 0, 0), 2, 1),
    ((1, 1, 1, 0, 0, 0, 0, 0, 0), 1, None),
])
def test_surface_profiles(ell, d, degree):
    ell = PicClass(SURFACE, ell)
    if degree is None:
        with pytest.raises(DomainError):
            walk.special_surface_profile(h, ell)
    else:
        p = walk.special_surface_profile(h, ell)
        assert (p.d, p.degree) == (d, degree)
        a, b = walk.surface_ledger_decomposition(h, ell)
        assert walk.surface_degree_ledger(a, b) == degree


def test_negative_curves():
    curves = walk.negative_curves()
    assert len(curves) == 36
    assert sum(1 for g in curves if g.coeffs[0] == 1) == 28
    assert sum(1 for g in curves if g.coeffs[0] == 4) == 8
