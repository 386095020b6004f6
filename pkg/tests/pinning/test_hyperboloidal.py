import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from geometry.core import X_AXIS, Configuration, dist_point_line, move_line
from geometry.errors import DegenerateParameter, InvalidInput
from geometry.sampling import make_rng, random_rigid_motion
from pinning.hyperboloidal import (
    HyperboloidalParams,
    hyperboloidal_centers,
    hyperboloidal_params_from,
    make_hyperboloidal,
)

h_values = st.floats(min_value=-5, max_value=5, allow_nan=False).filter(lambda h: abs(h) > 1e-2)
t_values = st.floats(min_value=-5, max_value=5, allow_nan=False).filter(lambda t: abs(abs(t) - 1) > 1e-2)
fit_h = st.floats(min_value=0.1, max_value=4).flatmap(lambda h: st.sampled_from([h, -h]))
fit_t = st.floats(min_value=-4, max_value=4, allow_nan=False).filter(lambda t: abs(abs(t) - 1) > 5e-2)


def test_zero_parameter_sits_on_the_y_axis():
    assert np.allclose(hyperboloidal_centers(3.0, [0.0]), [[0.0, 1.0, 0.0]])


def test_pole_is_rejected():
    with pytest.raises(DegenerateParameter):
        hyperboloidal_centers(1.0, [1.0])
    with pytest.raises(DegenerateParameter):
        HyperboloidalParams(1.0, (0.0, 1.0, 2.0, 3.0))
    with pytest.raises(DegenerateParameter):
        HyperboloidalParams(0.0, (0.0, 0.5, 2.0, 3.0))
    with pytest.raises(InvalidInput):
        HyperboloidalParams(1.0, (0.0, 0.5, 0.5, 3.0))


@given(h_values, st.lists(t_values, min_size=1, max_size=8))
def test_centers_lie_on_the_quadric_and_touch_the_axis(h, ts):
    c = hyperboloidal_centers(h, ts)
    x, y, z = c.T
    scale = 1.0 + np.abs(x)
    assert np.all(np.abs(x * y - h * z) <= 1e-10 * scale)
    assert np.allclose(y * y + z * z, 1.0, atol=1e-12)


def test_alternating_example_is_disjoint_and_tangent(hyperboloidal_t):
    built = make_hyperboloidal(HyperboloidalParams(1.0, hyperboloidal_t))
    assert all(built.tangent)
    assert built.non_overlapping
    for c in built.configuration.centers:
        assert dist_point_line(c, X_AXIS) == pytest.approx(1.0, abs=1e-12)


@given(fit_h, st.lists(fit_t, min_size=4, max_size=4, unique=True))
@settings(max_examples=50, deadline=None)
def test_params_are_recovered_up_to_congruence(h, ts):
    assume(min(np.diff(sorted(ts))) > 5e-2)
    params = HyperboloidalParams(h, tuple(ts))
    built = make_hyperboloidal(params)
    found = hyperboloidal_params_from(built.configuration, X_AXIS)
    before = built.configuration.centers
    after = hyperboloidal_centers(found.h, found.t)
    d0 = np.linalg.norm(before[:, None] - before[None], axis=-1)
    d1 = np.linalg.norm(after[:, None] - after[None], axis=-1)
    assert np.allclose(d0, d1, atol=1e-6 * (1 + d0.max()))


def test_params_survive_a_rigid_motion(hyperboloidal_t):
    built = make_hyperboloidal(HyperboloidalParams(1.0, hyperboloidal_t))
    rotation, translation = random_rigid_motion(make_rng(5))
    moved = built.configuration.moved(rotation, translation)
    found = hyperboloidal_params_from(moved, move_line(X_AXIS, rotation, translation))
    rebuilt = Configuration.from_centers(hyperboloidal_centers(found.h, found.t), allow_overlap=True)
    d0 = np.linalg.norm(moved.centers[:, None] - moved.centers[None], axis=-1)
    d1 = np.linalg.norm(rebuilt.centers[:, None] - rebuilt.centers[None], axis=-1)
    assert np.allclose(d0, d1, atol=1e-6)


def test_non_tangent_balls_have_no_params(collinear4):
    with pytest.raises(InvalidInput):
        hyperboloidal_params_from(collinear4, X_AXIS)
