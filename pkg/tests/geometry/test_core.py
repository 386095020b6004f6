import json
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from geometry.core import (
    X_AXIS,
    Ball,
    Configuration,
    GeometricPermutation,
    Line,
    OrderedOrder,
    canonicalize,
    dist_point_line,
    move_line,
    order_along,
    rotation_matrix,
    stabbing_order,
)
from geometry.errors import InvalidInput, MixedRadii, NotATransversal, OverlapError, TieError
from geometry.sampling import make_rng, random_rigid_motion, random_stabbed_configuration

coordinate = st.floats(min_value=-50, max_value=50, allow_nan=False, allow_infinity=False)
vector = st.tuples(coordinate, coordinate, coordinate)


def test_dist_point_line_unit_offset():
    assert dist_point_line((0, 1, 0), X_AXIS) == pytest.approx(1.0)
    assert dist_point_line((7, 0, 0), X_AXIS) == pytest.approx(0.0)


@given(vector, vector)
def test_line_is_stored_in_canonical_form(point, direction):
    assume(np.linalg.norm(direction) >= 1e-3)
    line = Line.through(point, direction)
    assert np.linalg.norm(line.d) == pytest.approx(1.0, abs=1e-12)
    assert abs(np.dot(line.p, line.d)) <= 1e-9 * max(1.0, np.linalg.norm(point))
    assert dist_point_line(point, line) <= 1e-9 * max(1.0, np.linalg.norm(point))


def test_zero_direction_is_rejected():
    with pytest.raises(InvalidInput):
        Line.through((1, 2, 3), (0, 0, 0))


def test_unoriented_line_has_nonnegative_direction():
    line = Line.through((0, 2, 0), (-1, 0, 0), oriented=False)
    assert tuple(line.direction) == (1.0, 0.0, 0.0)
    assert line.separation(Line.through((5, 2, 0), (1, 0, 0))) == pytest.approx(0.0, abs=1e-12)


@given(st.permutations("ABCDE"))
def test_canonical_permutation_is_the_smaller_orientation(labels):
    order = OrderedOrder(tuple(labels))
    gp = canonicalize(order)
    assert gp.canonical.labels <= gp.canonical.reversed().labels
    assert gp == canonicalize(order.reversed())
    assert order in gp.orders()


def test_non_canonical_permutation_is_rejected():
    with pytest.raises(InvalidInput):
        GeometricPermutation(OrderedOrder(tuple("DCBA")))
    with pytest.raises(InvalidInput):
        OrderedOrder(("A", "A"))


def test_order_parse_accepts_long_labels():
    assert OrderedOrder.parse("ABCD").labels == ("A", "B", "C", "D")
    order = OrderedOrder.parse("a1, a2,a3")
    assert order.labels == ("a1", "a2", "a3")
    assert str(order) == "a1,a2,a3"


def test_overlap_is_rejected_but_tangency_allowed():
    with pytest.raises(OverlapError):
        Configuration.from_centers([(0, 0, 0), (1, 0, 0)])
    cfg = Configuration.from_centers([(0, 0, 0), (2, 0, 0)])
    assert cfg.is_non_overlapping()
    loose = Configuration.from_centers([(0, 0, 0), (1, 0, 0)], allow_overlap=True)
    assert loose.overlapping_pairs() == [("A", "B")]


def test_mixed_radii_guard():
    cfg = Configuration.from_items([("A", Ball((0, 0, 0), 1.0)), ("B", Ball((5, 0, 0), 2.0))])
    with pytest.raises(MixedRadii):
        cfg.common_radius()
    with pytest.raises(InvalidInput):
        Ball((0, 0, 0), 0.0)


def test_stabbing_order_along_axis(collinear4):
    assert str(stabbing_order(collinear4, X_AXIS)) == "ABCD"
    assert str(stabbing_order(collinear4, X_AXIS.reversed())) == "DCBA"
    with pytest.raises(NotATransversal):
        stabbing_order(collinear4, Line.through((0, 5, 0), (1, 0, 0)))


def test_perpendicular_direction_ties(collinear4):
    with pytest.raises(TieError):
        order_along(collinear4, (0, 1, 0))
    assert str(order_along(collinear4, (1, 0.1, 0))) == "ABCD"


@given(st.integers(min_value=0, max_value=2**31 - 1))
@settings(max_examples=30, deadline=None)
def test_stabbing_order_survives_rigid_motion(seed):
    rng = make_rng(seed, 99)
    cfg, line = random_stabbed_configuration(5, rng)
    rotation, translation = random_rigid_motion(rng)
    moved = cfg.moved(rotation, translation)
    assert stabbing_order(moved, move_line(line, rotation, translation)) == stabbing_order(cfg, line)
    d0 = np.linalg.norm(cfg.centers[:, None] - cfg.centers[None], axis=-1)
    d1 = np.linalg.norm(moved.centers[:, None] - moved.centers[None], axis=-1)
    assert np.allclose(d0, d1, atol=1e-9)


def test_rotation_matrix_is_orthogonal():
    r = rotation_matrix((1, 2, 3), 0.7)
    assert np.allclose(r @ r.T, np.eye(3), atol=1e-12)
    assert np.linalg.det(r) == pytest.approx(1.0)
    assert np.allclose(rotation_matrix((0, 0, 1), math.pi / 2) @ [1, 0, 0], [0, 1, 0], atol=1e-12)


def test_configuration_file_round_trip(tmp_path, two_permutation5):
    path = tmp_path / "cfg.json"
    two_permutation5.save(str(path))
    loaded, digest = Configuration.load(str(path))
    assert loaded == two_permutation5
    assert len(digest) == 64
    assert Configuration.load(str(path))[1] == digest


def test_configuration_load_errors(tmp_path):
    with pytest.raises(InvalidInput):
        Configuration.load(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InvalidInput):
        Configuration.load(str(bad))
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"balls": [{"center": [0, 0, 0]}]}))
    with pytest.raises(InvalidInput):
        Configuration.load(str(wrong))


def test_shipped_examples_load(example_path):
    for name, size in (("collinear_four.json", 4), ("tri_tang_three.json", 3),
                       ("two_permutation_five.json", 5), ("acute_triangle.json", 3)):
        cfg, _ = Configuration.load(example_path(name))
        assert len(cfg) == size
        assert cfg.is_non_overlapping()
