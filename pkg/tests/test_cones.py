import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dp1kit import cones
from dp1kit.classes import ClassKind, array_of, enumerate_kind
from dp1kit.exact import extreme_rays, in_cone
from dp1kit.lattice import K_S, SURFACE, PicClass, S, unit


@pytest.fixture(scope="module")
def E():
    return cones.build_cone("E")


def test_cone_sizes():
    sizes = {n: (len(c.generators), len(c.inequality_normals)) for n in cones.CONE_NAMES for c in [cones.build_cone(n)]}
    assert sizes["NE"][0] == 240
    assert sizes["NEF"] == (19440, 240)
    assert sizes["E"] == (2160, 17520)
    assert sizes["PI"] == (0, 2400)
    assert sizes["N"][1] == 240


def test_e_cubic_block(E):
    assert len(E.normals_of_kind("cubic")) == 17280


def test_anticanonical_is_ample():
    assert cones.is_ample(-K_S)
    assert not cones.is_ample(unit(SURFACE, 0))


def test_containment_strictness(E):
    C = PicClass(SURFACE, (1, 1, 0, 0, 0, 0, 0, 0, 0))
    assert cones.contains(E, C)
    assert not cones.contains(E, C, strict=True)
    assert cones.contains(E, -K_S, strict=True)
    assert not cones.contains(E, unit(SURFACE, 1))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2159), st.integers(1, 5)), min_size=1, max_size=6))
def test_nonnegative_combinations_of_conics_lie_in_e(E, picks):
    conics = array_of(ClassKind.CONIC)
    v = sum(c * conics[i] for i, c in picks)
    assert cones.contains(E, PicClass(SURFACE, tuple(int(x) for x in v)))


def test_in_cone_simplex_agrees_with_inequalities(E):
    gens = [tuple(int(v) for v in r) for r in array_of(ClassKind.CONIC)[:40]]
    inside = tuple(sum(g[i] for g in gens[:3]) for i in range(9))
    assert in_cone(inside, gens)
    assert not in_cone(K_S.coeffs, gens)


def test_extreme_rays_of_orthant():
    normals = [tuple(int(i == j) for j in range(3)) for i in range(3)]
    assert sorted(extreme_rays(normals, 3)) == sorted(normals)


def test_facet_of_cubic_normal_is_simplicial(E):
    h = unit(SURFACE, 0)
    gens = cones.facet_generators(E, 2 * h + K_S)
    assert len(gens) == 8
    assert cones.facet_rank(gens) == 8


def test_chain():
    assert cones.verify_chain().ok


def test_twist_maps_nef_onto_n():
    assert cones.twist_maps_nef_onto_n()


def test_cubic_certificate():
    h = unit(SURFACE, 0)
    C, ell = cones.cubic_normal_certificate(h)
    assert (2 * C + K_S) + 2 * ell == 2 * h + K_S


def test_cubic_normals_alone_do_not_cut_out_e(E):
    x = -5 * K_S - 2 * unit(SURFACE, 1)
    assert (cones.pair_rows(E.normals_of_kind("cubic"), x.coeffs) >= 0).all()
    assert not cones.contains(E, x)
