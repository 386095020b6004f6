import pytest

from geometry.core import X_AXIS, Ball, Configuration, Line
from geometry.errors import NotATransversal
from geometry.sampling import make_rng
from pinning.pinned import is_pinned, triple_pinning_predicate


def _alternating_triple(rng):
    """Three unit balls tangent to the x-axis in one plane, middle on the other side."""
    xs = [0.0, float(rng.uniform(2.1, 3.5))]
    xs.append(xs[1] + float(rng.uniform(2.1, 3.5)))
    return Configuration.from_centers([(xs[0], 1, 0), (xs[1], -1, 0), (xs[2], 1, 0)])


def test_predicate_on_alternating_triple(tri_tang3):
    assert triple_pinning_predicate(*tri_tang3.balls, X_AXIS)


def test_predicate_rejects_same_side_and_skew_triples():
    same_side = Configuration.from_centers([(0, 1, 0), (3, 1, 0), (6, 1, 0)])
    assert not triple_pinning_predicate(*same_side.balls, X_AXIS)
    skew = Configuration.from_centers([(0, 1, 0), (3, 0, -1), (6, 1, 0)])
    assert not triple_pinning_predicate(*skew.balls, X_AXIS)
    loose = Configuration.from_centers([(0, 1, 0), (3, -0.5, 0), (6, 1, 0)])
    assert not triple_pinning_predicate(*loose.balls, X_AXIS)


def test_mixed_radii_are_not_a_triple_pinning():
    balls = (Ball((0, 1, 0)), Ball((3, -2, 0), 2.0), Ball((6, 1, 0)))
    assert not triple_pinning_predicate(*balls, X_AXIS)


@pytest.mark.parametrize("scan_radius", [1e-2, 1e-3, 1e-4])
def test_tri_tang_triple_is_pinned(tri_tang3, scan_radius):
    cert = is_pinned(tri_tang3, X_AXIS, scan_radius=scan_radius, samples=2000)
    assert cert.pinned
    assert str(cert.order) == "ABC"
    assert len(cert.shells) == 3


@pytest.mark.parametrize("seed", range(5))
def test_predicate_and_scan_agree(seed):
    cfg = _alternating_triple(make_rng(seed, 70))
    assert triple_pinning_predicate(*cfg.balls, X_AXIS)
    assert is_pinned(cfg, X_AXIS, samples=2000, seed=seed).pinned


def test_two_balls_are_never_pinned():
    cfg = Configuration.from_centers([(0, 1, 0), (3, -1, 0)])
    cert = is_pinned(cfg, X_AXIS, samples=2000)
    assert not cert.pinned
    assert cert.min_constraint_slack > 0


def test_collinear_centers_are_not_pinned(collinear4):
    assert not is_pinned(collinear4, X_AXIS, samples=2000).pinned


def test_scan_requires_a_transversal(tri_tang3):
    with pytest.raises(NotATransversal):
        is_pinned(tri_tang3, Line.through((0, 3, 0), (1, 0, 0)))
