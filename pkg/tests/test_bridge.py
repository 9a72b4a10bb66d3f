import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dp1kit import bridge, classes
from dp1kit.classes import ClassKind, enumerate_kind
from dp1kit.errors import BasisMismatch, DomainError, IntegralityError
from dp1kit.lattice import FOURFOLD, K_S, K_X, SURFACE, PicClass, bertini_pullback, make, pair, unit

from conftest import surface_classes

h = unit(SURFACE, 0)
e1 = unit(SURFACE, 1)


def test_rho_on_generators():
    assert bridge.rho(h).coeffs == (-1,) * 9
    assert bridge.rho(-K_S) == -K_X
    assert bridge.rho_inverse(bridge.rho(e1)) == e1


@given(surface_classes())
def test_rho_round_trip(x):
    assert bridge.rho_inverse(bridge.rho(x)) == x


@given(surface_classes())
def test_adjointness(x):
    g = make("XC", x.coeffs)
    assert bridge.adjointness_holds(x, g)


@given(surface_classes())
def test_bertini_is_equivariant(x):
    assert bridge.bertini_on_X(bridge.rho(x)) == bridge.rho(bertini_pullback(x))


def test_rho_half_integrality():
    assert not bridge.rho_half_is_integral(-K_S)
    with pytest.raises(IntegralityError):
        bridge.rho_half_integral(-K_S)
    roots = enumerate_kind(ClassKind.ROOT)
    assert all(bridge.rho_half_is_integral(r) for r in roots)
    assert not any(bridge.rho_half_is_integral(2 * l + K_S) for l in enumerate_kind(ClassKind.MINUS_ONE))


def test_wrong_basis_rejected():
    with pytest.raises(BasisMismatch):
        bridge.rho(unit(FOURFOLD, 0))


def test_zeta_special_curves():
    assert bridge.zeta_of_special_curves("line-in-P_ell", e1) == 2 * e1 + K_S
    assert bridge.zeta_of_special_curves("Z_ell", e1) == -(2 * e1 + K_S)
    C = PicClass(SURFACE, (1, 1, 0, 0, 0, 0, 0, 0, 0))
    assert bridge.zeta_of_special_curves("line-in-E_C", C) == 2 * C + K_S
    with pytest.raises(DomainError):
        bridge.zeta_of_special_curves("quartic", e1)


def test_fixed_divisors_have_anticanonical_degree_three():
    for C in enumerate_kind(ClassKind.CONIC)[:200]:
        D = bridge.fixed_divisor_class(C)
        assert pair(D, -K_X) == 3


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32), st.integers(0, 30))
def test_weyl_transfer_is_isometry(seed, length):
    w = classes.random_word(random.Random(seed), length)
    a = bridge.weyl_transfer(w)
    assert a.preserves_form() and a.fixes_canonical()
    x = PicClass(SURFACE, (2, 1, 0, 0, 1, 0, 0, 0, 0))
    assert a(bridge.rho(x)) == bridge.rho(w(x))


def test_adapted_frame_sends_h_to_cubic():
    cubic = enumerate_kind(ClassKind.CUBIC)[1234]
    w = bridge.adapted_frame(cubic)
    assert w.is_weyl()
    assert w(h) == cubic
    assert bridge.in_adapted_basis(cubic, cubic) == h


def test_gamma_tilde_example():
    ell = PicClass(SURFACE, (2, 1, 1, 1, 1, 1, 0, 0, 0))
    assert bridge.gamma_tilde_class(h, ell).coeffs == (2, 0, 0, 0, 0, 0, 1, 1, 1)


def test_nef_cone_of_blowup():
    assert len(bridge.nef_x_rays()) == 228
    assert bridge.nef_x_matches_chamber_closure()


def test_curve_R():
    R = bridge.curve_R()
    assert R.coeffs == (5, 1, 1, 1, 1, 1, 1, 1, 1)
