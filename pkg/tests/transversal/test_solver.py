import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from geometry.core import OrderedOrder, stabbing_order
from geometry.sampling import jittered_directions, make_rng, random_configuration, random_rigid_motion
from transversal.solver import (
    NotFound,
    TransversalWitness,
    depth,
    depth_batch,
    find_transversal,
    order_margin,
    perp_basis,
    project_centers,
)

ABCD = OrderedOrder(tuple("ABCD"))


def test_perp_basis_is_orthonormal():
    dirs = jittered_directions(500, seed=1)
    u1, u2 = perp_basis(dirs)
    for a, b in ((u1, u2), (u1, dirs), (u2, dirs)):
        assert np.allclose(np.sum(a * b, axis=1), 0.0, atol=1e-12)
    assert np.allclose(np.linalg.norm(u1, axis=1), 1.0)
    assert np.allclose(np.linalg.norm(u2, axis=1), 1.0)


def test_depth_along_the_axis_of_collinear_balls(collinear4):
    result = depth(collinear4, (1, 0, 0))
    assert result.depth == pytest.approx(1.0)
    assert np.allclose(result.witness_line().d, (1, 0, 0))
    assert np.allclose(project_centers(collinear4, (1, 0, 0)), 0.0, atol=1e-12)


@pytest.mark.parametrize("v, expected", [
    ((1, 0, 0), 1.0),
    ((0, 0, 1), -2.0),
    ((1 / np.sqrt(2), 1 / np.sqrt(2), 0), 1.0 - 3.0 * np.sqrt(2) / 2),
])
def test_depth_of_touching_collinear_balls(touching_collinear4, v, expected):
    assert depth(touching_collinear4, v).depth == pytest.approx(expected, abs=1e-9)


def test_depth_is_even_in_the_direction(two_permutation5):
    for v in jittered_directions(50, seed=2):
        assert depth(two_permutation5, v).depth == pytest.approx(depth(two_permutation5, -v).depth, abs=1e-12)


def test_shrinking_radii_lowers_depth_by_the_same_amount(two_permutation5):
    dirs = jittered_directions(64, seed=3)
    full = depth_batch(two_permutation5, dirs)
    shrunk = depth_batch(two_permutation5.scaled(0.75), dirs)
    assert np.allclose(full - shrunk, 0.25, atol=1e-12)


def test_batch_matches_single_depth(two_permutation5):
    dirs = jittered_directions(200, seed=4)
    batch = depth_batch(two_permutation5, dirs)
    single = np.array([depth(two_permutation5, v).depth for v in dirs])
    assert np.allclose(batch, single, atol=1e-10)


@given(st.integers(min_value=0, max_value=2**31 - 1))
@settings(max_examples=25, deadline=None)
def test_depth_is_invariant_under_rigid_motion(seed):
    rng = make_rng(seed, 17)
    cfg = random_configuration(5, rng)
    rotation, translation = random_rigid_motion(rng)
    moved = cfg.moved(rotation, translation)
    for v in jittered_directions(8, seed=seed):
        assert depth(moved, rotation @ v).depth == pytest.approx(depth(cfg, v).depth, abs=1e-9)


def test_order_margin_sign(collinear4):
    assert order_margin(collinear4, ABCD, (1, 0, 0)) == pytest.approx(1.0)
    assert order_margin(collinear4, OrderedOrder(tuple("ACBD")), (1, 0, 0)) < 0
    margins = order_margin(collinear4, ABCD, np.array([[1, 0, 0], [-1, 0, 0]]))
    assert margins.shape == (2,)
    assert margins[0] > 0 > margins[1]


def test_collinear_axis_is_found(collinear4):
    witness = find_transversal(collinear4, ABCD, budget=500, seed=0)
    assert isinstance(witness, TransversalWitness)
    assert witness.depth == pytest.approx(1.0, abs=1e-6)
    assert np.allclose(witness.line.d, (1, 0, 0), atol=1e-6)
    assert stabbing_order(collinear4, witness.line) == ABCD


def test_infeasible_order_is_not_found(collinear4):
    result = find_transversal(collinear4, OrderedOrder(tuple("ACBD")), budget=500, seed=0)
    assert isinstance(result, NotFound)
    assert not result
    assert result.best_depth < 0 or result.best_order_margin <= 0
    assert result.to_dict()["status"] == "not_found"


@pytest.mark.parametrize("order", ["ABC", "ACB"])
def test_triangle_realizes_both_orders(isosceles3, order):
    target = OrderedOrder(tuple(order))
    witness = find_transversal(isosceles3, target, budget=1000, seed=5)
    assert witness
    assert stabbing_order(isosceles3, witness.line) == target
