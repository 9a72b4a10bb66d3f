from fractions import Fraction

import pytest
from hypothesis import given

from dp1kit.errors import BasisMismatch, DomainError
from dp1kit.lattice import (
    FOURFOLD, K_S, K_X, SURFACE, PicClass, RatClass, adjoint_twist, bertini_pullback, eigen_multiplicities,
    esum, involution_fixed_subspace, make, matrix_of, pair, unit,
)

from conftest import surface_classes


def test_canonical_classes():
    assert K_S.coeffs == (-3,) + (-1,) * 8
    assert K_X.coeffs == (-5,) + (-3,) * 8
    assert pair(K_S, K_S) == 1


def test_esum_sign():
    assert esum().coeffs == (0,) + (-1,) * 8


def test_make_reduces_and_rejects_floats():
    assert isinstance(make(SURFACE, [Fraction(2, 2)] + [0] * 8), PicClass)
    assert isinstance(make(SURFACE, [Fraction(1, 2)] + [0] * 8), RatClass)
    with pytest.raises(DomainError):
        make(SURFACE, [1.0] + [0] * 8)


def test_cross_basis_pairing_rejected():
    with pytest.raises(BasisMismatch):
        pair(unit(SURFACE, 0), unit(FOURFOLD, 0))


def test_surface_bertini_explicit(h, e):
    assert bertini_pullback(h) == 17 * h - 6 * esum()
    assert bertini_pullback(e[1]) == 6 * h - 2 * esum() - e[1]


@given(surface_classes())
def test_bertini_is_involution(x):
    assert bertini_pullback(bertini_pullback(x)) == x


@given(surface_classes(), surface_classes())
def test_bertini_is_isometry(x, y):
    assert pair(bertini_pullback(x), bertini_pullback(y)) == pair(x, y)


@given(surface_classes())
def test_bertini_fixes_canonical_direction(x):
    assert pair(bertini_pullback(x), K_S) == pair(x, K_S)


@given(surface_classes(), surface_classes())
def test_adjoint_twist_is_linear(x, y):
    assert adjoint_twist(x + y) == adjoint_twist(x) + adjoint_twist(y)


@given(surface_classes())
def test_adjoint_twist_averages_with_bertini(x):
    assert 2 * adjoint_twist(x) == 3 * x + bertini_pullback(x)


def test_involution_spectrum():
    assert eigen_multiplicities(matrix_of(bertini_pullback)) == {1: 1, -1: 8}
    fixed = involution_fixed_subspace()
    assert len(fixed) == 1
    assert pair(fixed[0], K_S) != 0
