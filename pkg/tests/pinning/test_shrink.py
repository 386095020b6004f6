import numpy as np
import pytest

from geometry.core import X_AXIS, Configuration, OrderedOrder, stabbing_order
from geometry.errors import Infeasible, NoInitialTransversal
from pinning.pinned import is_pinned
from pinning.shrink import shrink_to_pin, two_stage_shrink

ABC = OrderedOrder(tuple("ABC"))


@pytest.mark.parametrize("y0", [0.15, 0.4, 0.75])
def test_zigzag_triple_pins_at_its_offset(y0):
    cfg = Configuration.from_centers([(0, y0, 0), (2, -y0, 0), (4, y0, 0)])
    result = shrink_to_pin(cfg, ABC, seed=1)
    assert result.t_star == pytest.approx(y0, abs=1e-6)
    assert result.line.separation(X_AXIS) < 1e-6
    assert result.probes > 0


def test_pinned_radius_is_certified():
    cfg = Configuration.from_centers([(0, 0.5, 0), (2, -0.5, 0), (4, 0.5, 0)])
    result = shrink_to_pin(cfg, ABC, seed=2)
    pinned = cfg.scaled(result.t_star)
    assert stabbing_order(pinned, result.line) in (ABC, ABC.reversed())
    assert is_pinned(pinned, result.line, samples=2000).pinned


def test_collinear_centers_shrink_to_zero(collinear4):
    result = shrink_to_pin(collinear4, OrderedOrder(tuple("ABCD")))
    assert result.t_star == 0.0
    assert np.allclose(np.abs(result.line.d), (1, 0, 0))
    reversed_result = shrink_to_pin(collinear4, OrderedOrder(tuple("DCBA")))
    assert reversed_result.t_star == 0.0


def test_unrealizable_order_has_no_start(collinear4):
    with pytest.raises(NoInitialTransversal):
        shrink_to_pin(collinear4, OrderedOrder(tuple("ACBD")))


def test_two_stage_needs_both_orders(collinear4):
    with pytest.raises(Infeasible):
        two_stage_shrink(collinear4, OrderedOrder(tuple("ABCD")), OrderedOrder(tuple("ACDB")), budget=300)


def test_already_pinned_triple_keeps_its_radius(tri_tang3):
    result = shrink_to_pin(tri_tang3, ABC, seed=3)
    assert result.t_star == pytest.approx(1.0, abs=1e-6)
    assert result.line.separation(X_AXIS) < 1e-6


def test_two_stage_pins_both_orders(isosceles3):
    acb = OrderedOrder(tuple("ACB"))
    result = two_stage_shrink(isosceles3, ABC, acb)
    assert 0.0 < result.t1 < 1.0
    assert 0.0 < result.homothety <= 1.0
    assert result.configuration.common_radius() == pytest.approx(1.0)
    assert result.configuration.is_non_overlapping()
    assert stabbing_order(result.configuration, result.line1) in (ABC, ABC.reversed())
    assert stabbing_order(result.configuration, result.line2) in (acb, acb.reversed())
    for line in (result.line1, result.line2):
        assert is_pinned(result.configuration, line, samples=2000).pinned
    assert result.to_dict()["order2"] == "ACB"
