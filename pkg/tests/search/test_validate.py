import pytest

from geometry.errors import Infeasible
from search.merit import PinningSearchState, TangencySearchState
from search.validate import (
    cross_validate_pinning_state,
    equality_jacobian_rank,
    tangency_state_to_pinning_state,
    validate_tangency_state,
)

X_AXIS_LINE = (0.0, 0.0, 0.0, 0.0)


def test_overlapping_tangency_state_is_invalid():
    state = TangencySearchState((1.0, 6.0, 0.0, 9.0, 0.0, 0.0), X_AXIS_LINE, X_AXIS_LINE)
    result = validate_tangency_state(state)
    assert not result.valid
    assert not result.certified_by_solver


def test_collinear_tangency_state_fails_the_second_order():
    state = TangencySearchState((3.0, 6.0, 0.0, 9.0, 0.0, 0.0), X_AXIS_LINE, X_AXIS_LINE)
    result = validate_tangency_state(state, budget=300)
    assert result.line1_order
    assert not result.line2_order
    assert not result.valid
    assert result.to_dict()["valid"] is False


def test_identical_configurations_align_exactly(hyperboloidal_t):
    result = cross_validate_pinning_state(PinningSearchState(1.0, hyperboloidal_t, 1.0, hyperboloidal_t))
    assert result.distance_error < 1e-12
    assert result.alignment_error < 1e-9
    assert result.orientation == "proper"
    assert result.first_order
    assert not result.second_order
    assert result.non_overlapping
    assert not result.valid


def test_negated_h_is_a_mirror_image(hyperboloidal_t):
    result = cross_validate_pinning_state(PinningSearchState(1.0, hyperboloidal_t, -1.0, hyperboloidal_t))
    assert result.distance_error < 1e-12
    assert result.alignment_error < 1e-9
    assert result.orientation == "mirror"


def test_equality_jacobian_rank(hyperboloidal_t):
    rank, singular_values = equality_jacobian_rank(PinningSearchState(1.0, hyperboloidal_t, 1.0, hyperboloidal_t))
    assert 1 <= rank <= 7
    assert len(singular_values) == 7


def test_conversion_needs_both_orders():
    state = TangencySearchState((3.0, 6.0, 0.0, 9.0, 0.0, 0.0), X_AXIS_LINE, X_AXIS_LINE)
    with pytest.raises(Infeasible):
        tangency_state_to_pinning_state(state, budget=300)
