from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from dp1kit import fan
from dp1kit.classes import ClassKind, enumerate_kind
from dp1kit.errors import NotAmple
from dp1kit.fan import INVERSE, Status, Transformation, WallKind
from dp1kit.lattice import K_S, SURFACE, unit

h = unit(SURFACE, 0)
CUBICS = enumerate_kind(ClassKind.CUBIC)


def test_wall_census():
    sl = fan.wall_kind_slices()
    sizes = {k: s.stop - s.start for k, s in sl.items()}
    assert sizes == {WallKind.CURVE: 240, WallKind.CONIC: 2160, WallKind.CUBIC: 17280}
    assert fan.normals_pairwise_nonproportional()


def test_wall_normals_are_twice_center_plus_k():
    for w in fan.all_walls()[:50]:
        assert w.normal == 2 * w.center + K_S


@pytest.mark.parametrize("name", ["C_h", "B_h", "F_h", "CENTRAL"])
def test_labels_recovered(name):
    c = fan.chamber_of(fan.label_representative(name, h))
    assert c.label.name == name
    if name != "CENTRAL":
        assert c.label.witness == h


def test_negative_set_sizes():
    assert len(fan.chamber_of(-K_S + 4 * h).negative_walls()) == 44
    assert len(fan.chamber_of(-K_S + 2 * h).negative_walls()) == 36
    assert len(fan.chamber_of(-2 * K_S + h).negative_walls()) == 8


def _point(L0, L1, t):
    return (1 - t) * L0 + t * L1


def test_wall_point_resolves_toward_anticanonical():
    L = _point(-K_S, -K_S + 4 * h, Fraction(1, 12))
    through = fan.walls_through(L)
    assert len(through) == 8 and all(w.kind is WallKind.CURVE for w in through)
    c = fan.chamber_of(L)
    assert (fan.wall_values(c.representative) != 0).all()
    assert c == fan.chamber_of(-K_S)


def test_path_to_outer_chamber():
    events = fan.cross_path(-K_S, -K_S + 4 * h)
    assert [(e.t, len(e.crossings)) for e in events] == [(Fraction(1, 12), 8), (Fraction(1, 4), 28), (Fraction(3, 4), 8)]
    assert [e.kinds for e in events] == [{Transformation.FLIP_P_TO_Z}] * 2 + [{Transformation.CONTRACT_E_TO_POINT}]


def test_lt_parametrization_is_symmetric():
    events = fan.lt_parametrization(h)
    assert [e.t for e in events] == [Fraction(*p) for p in
                                     [(1, 32), (1, 20), (1, 8), (1, 4), (3, 4), (7, 8), (19, 20), (31, 32)]]
    assert [len(e.crossings) for e in events] == [1, 8, 28, 8, 8, 28, 8, 1]


@settings(max_examples=15, deadline=None)
@given(st.integers(0, len(CUBICS) - 1), st.integers(0, len(CUBICS) - 1), st.integers(1, 4), st.integers(1, 4))
def test_reverse_path_inverts_transformations(i, j, a, b):
    L0 = -a * K_S + CUBICS[i]
    L1 = -b * K_S + CUBICS[j]
    assume(all((fan.wall_values(L) != 0).all() for L in (L0, L1)))
    fwd = fan.cross_path(L0, L1)
    back = fan.cross_path(L1, L0)
    assert [1 - e.t for e in reversed(back)] == [e.t for e in fwd]
    for f, r in zip(fwd, reversed(back)):
        assert {INVERSE[k] for k in r.kinds} == f.kinds
        assert sorted(r.centers) == sorted(f.centers)


def test_segment_inside_one_chamber_has_no_events():
    assert fan.cross_path(-K_S, -2 * K_S) == []
    assert fan.cross_path(-K_S + 4 * h, -K_S + Fraction(9, 2) * h) == []


def test_moduli_status_examples():
    assert fan.moduli_status(-K_S).status is Status.SMOOTH_4FOLD
    assert fan.moduli_status(-K_S + 4 * h).status is Status.P4
    assert fan.moduli_status(-K_S + 6 * h).status is Status.EMPTY
    wall = fan.moduli_status(_point(-K_S, -K_S + 4 * h, Fraction(3, 4)))
    assert wall.status is Status.SMOOTH_4FOLD
    assert len(wall.loci) == 8 and all(l.ext_dimensions == (1, 4) for l in wall.loci)
    with pytest.raises(NotAmple):
        fan.moduli_status(h)
