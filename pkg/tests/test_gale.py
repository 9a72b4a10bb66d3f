import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dp1kit import gale
from dp1kit.errors import DomainError, PositionError
from dp1kit.gale import PointConfiguration


def _config(seed, k=2, n=8):
    return gale.random_configuration(random.Random(seed), k, n)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32))
def test_association_is_orthogonal_and_involutive(seed):
    A = _config(seed)
    B = gale.associate(A)
    assert (B.k, B.n) == (4, 8)
    assert gale.orthogonal(A, B)
    assert gale.same_row_space(gale.associate(B), A)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**32))
def test_minor_identity(seed):
    A = _config(seed)
    report = gale.verify_minor_identity(A, gale.associate(A))
    assert report.checked == 420 and report.ok


def test_minor_identity_detects_perturbation():
    A = _config(7)
    B = gale.associate(A)
    rows = [list(r) for r in B.matrix]
    rows[0][0] += 1
    with pytest.raises(DomainError):
        gale.verify_minor_identity(A, PointConfiguration(B.k, tuple(tuple(r) for r in rows)))


def test_permutation_commutes_with_association():
    A = _config(3)
    perm = [3, 1, 7, 0, 2, 6, 5, 4]
    assert gale.same_row_space(gale.associate(A.permuted(perm)), gale.associate(A).permuted(perm))


def test_general_configuration_is_del_pezzo():
    A = _config(11)
    assert gale.general_linear_position(A)
    assert gale.del_pezzo_position(A).ok
    corr = gale.build_correspondence(A)
    assert corr.p_points.k == 4 and gale.general_linear_position(corr.p_points)


def _with_columns(cols):
    return PointConfiguration(2, tuple(tuple(Fraction(c[i]) for c in cols) for i in range(3)))


def test_collinear_points_rejected():
    cols = [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1), (1, 2, 3), (2, -1, 5), (3, 7, -2), (5, 1, 1)]
    rep = gale.del_pezzo_position(_with_columns(cols))
    assert not rep.ok and rep.reason.startswith("collinear")
    with pytest.raises(PositionError):
        gale.build_correspondence(_with_columns(cols))


def test_six_points_on_a_conic_rejected():
    conic = [(t * t, t, 1) for t in range(6)]  # x z = y^2
    cols = conic + [(1, 5, 2), (3, -4, 7)]
    rep = gale.del_pezzo_position(_with_columns(cols))
    assert not rep.ok and rep.reason == "conic"


def test_degenerate_inputs():
    with pytest.raises(DomainError):
        gale.associate(_with_columns([(1, 0, 0), (2, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3), (3, 1, 2), (2, 3, 5)]))
    with pytest.raises(DomainError):
        PointConfiguration.from_rows([[0, 1], [0, 2], [0, 3]])
    with pytest.raises(DomainError):
        PointConfiguration.from_rows([[1.5, 1], [0, 2], [1, 3]])


def test_json_round_trip_and_float_rejection(tmp_path):
    A = _config(5)
    path = tmp_path / "a.json"
    path.write_text(json.dumps(A.to_json()))
    assert gale.load_configuration(str(path)) == A
    path.write_text('{"k": 1, "points": [[1, 0.5], [0, 1], [1, 1]]}')
    with pytest.raises(DomainError):
        gale.load_configuration(str(path))
