import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dp1kit import classes
from dp1kit.classes import ClassKind, enumerate_kind, kind_of, reflect
from dp1kit.errors import DomainError, KindError, OrbitCapExceeded
from dp1kit.lattice import K_S, SURFACE, PicClass, bertini_pullback, pair

KINDS = list(ClassKind)


@pytest.mark.parametrize("kind", KINDS, ids=lambda k: k.name)
def test_counts_and_signature(kind):
    items = enumerate_kind(kind)
    assert len(items) == classes.EXPECTED_COUNTS[kind]
    assert len(set(items)) == len(items)
    assert all(kind_of(x) is kind for x in items)


@pytest.mark.parametrize("kind", KINDS, ids=lambda k: k.name)
def test_census_is_consistent(kind):
    assert classes.census(kind).consistent


def test_cubic_signature_excess_is_not_nef():
    c = classes.census(ClassKind.CUBIC)
    assert len(c.diophantine) == 17520
    assert len(c.non_nef_extra) == 240
    ell = PicClass(SURFACE, classes.SEEDS[ClassKind.MINUS_ONE])
    assert (-K_S + 2 * ell).coeffs in c.non_nef_extra
    assert pair(-K_S + 2 * ell, ell) < 0


def test_degree_window_covers_solutions():
    for kind in KINDS:
        window = classes.degree_window(*kind.value)
        assert {t[0] for t in classes.diophantine_solutions(*kind.value)} <= set(window)


def test_orbit_cap_enforced():
    with pytest.raises(OrbitCapExceeded):
        classes.orbit_tuples(classes.SEEDS[ClassKind.CONIC], cap=100)


def test_reflect_requires_root():
    h = PicClass(SURFACE, classes.SEEDS[ClassKind.CUBIC])
    with pytest.raises(KindError):
        reflect(h, h)


def test_parse_kind():
    assert classes.parse_kind("Cubics") is ClassKind.CUBIC
    with pytest.raises(DomainError):
        classes.parse_kind("quartics")


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32), st.integers(0, 40))
def test_random_words_are_weyl_and_permute_kinds(seed, length):
    w = classes.random_word(random.Random(seed), length)
    assert w.is_weyl()
    ells = enumerate_kind(ClassKind.MINUS_ONE)
    assert {w(x) for x in ells} == set(ells)


def test_bertini_element_is_weyl():
    b = classes.bertini_element()
    assert b.is_weyl()
    assert b @ b == classes.WeylElement.identity()


def test_bertini_swaps_minus_one_classes_in_pairs():
    for ell in enumerate_kind(ClassKind.MINUS_ONE):
        other = bertini_pullback(ell)
        assert other != ell
        assert pair(ell, other) == 3


def test_conic_incidences():
    ell = PicClass(SURFACE, classes.SEEDS[ClassKind.MINUS_ONE])
    assert len(classes.conics_disjoint_from(ell)) == 126
    C = PicClass(SURFACE, classes.SEEDS[ClassKind.CONIC])
    comps = classes.minus_one_components_of(C)
    assert len(comps) == 14  # seven reducible fibres
    assert all(C - x in comps for x in comps)


def test_pairing_matrix_matches_scalar():
    a = classes.array_of(ClassKind.ROOT)[:5]
    b = classes.array_of(ClassKind.CUBIC)[:7]
    m = classes.pairing_matrix(a, b)
    for i in range(5):
        for j in range(7):
            assert m[i, j] == pair(PicClass(SURFACE, tuple(int(v) for v in a[i])),
                                   PicClass(SURFACE, tuple(int(v) for v in b[j])))


def test_arrays_are_read_only():
    arr = classes.array_of(ClassKind.ROOT)
    assert arr.dtype == np.int64
    with pytest.raises(ValueError):
        arr[0, 0] = 5


def test_degree_two_nef_classes():
    assert classes.nef_classes_of_anticanonical_degree_two() == classes.expected_degree_two_nef()


def test_locus_counts():
    ell = PicClass(SURFACE, classes.SEEDS[ClassKind.MINUS_ONE])
    r = classes.locus_intersection_count(ell, bertini_pullback(ell))
    assert (r.count, r.pairing, r.generality_assumed) == (3, 3, True)
    with pytest.raises(DomainError):
        classes.locus_intersection_count(ell, ell)
