import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from geometry.core import X_AXIS, Ball, Line
from geometry.errors import NotTangent
from geometry.sampling import make_rng, unit_vectors
from pinning.chart import ChartFrame, chart_slack, coords4_to_line, line_to_coords4, ridge, screen_normal
from pinning.classify import nonnegative_dependency, numerical_rank


def test_reference_line_is_the_chart_origin():
    frame = ChartFrame.for_line(X_AXIS)
    assert np.allclose(line_to_coords4(X_AXIS, frame).as_array(), 0.0, atol=1e-12)


@given(st.integers(min_value=0, max_value=2**31 - 1))
@settings(max_examples=40, deadline=None)
def test_line_coordinates_round_trip(seed):
    rng = make_rng(seed, 3)
    reference = Line.through(rng.normal(size=3), unit_vectors(rng, 1, 3)[0])
    frame = ChartFrame.for_line(reference, center_on=rng.normal(size=3))
    tilt = unit_vectors(rng, 1, 3)[0] * 0.3
    line = Line.through(reference.p + rng.normal(size=3) * 0.5, reference.d + tilt)
    back = coords4_to_line(line_to_coords4(line, frame), frame)
    assert back.separation(line) < 1e-9


def test_ridge_is_perpendicular_and_tangent():
    ball = Ball((0, 1, 0))
    r = ridge(ball, X_AXIS)
    assert abs(np.dot(r.d, X_AXIS.d)) <= 1e-12
    offset = ball.c - r.foot_of(ball.c)
    assert np.linalg.norm(offset) == pytest.approx(1.0, abs=1e-9)
    assert np.allclose(np.abs(r.d), (0, 0, 1))


def test_ridge_needs_tangency():
    with pytest.raises(NotTangent):
        ridge(Ball((0, 2, 0)), X_AXIS)


def test_screen_normal_points_away_from_the_ball():
    ball = Ball((0.5, 1, 0))
    frame = ChartFrame.for_line(X_AXIS)
    screen = screen_normal(ball, X_AXIS, "A", frame)
    assert np.linalg.norm(screen.normal) == pytest.approx(1.0)
    # moving the line toward the center crosses into the ball
    toward = frame.rotation @ np.array([0.0, 1.0, 0.0])
    step = 1e-3 * np.concatenate([toward[:2], toward[:2]])
    slack = chart_slack(frame.to_chart([ball.c]), np.array([1.0]), step[None, :])
    assert slack[0] > 0
    assert float(screen.normal @ step) < 0


def test_chart_slack_of_the_tangent_line_is_zero():
    frame = ChartFrame.for_line(X_AXIS)
    centers = frame.to_chart([(0, 1, 0), (3, 0, -1)])
    assert chart_slack(centers, np.ones(2), np.zeros((1, 4)))[0] == pytest.approx(0.0, abs=1e-12)


def test_touching_balls_have_parallel_screen_normals():
    frame = ChartFrame.for_line(X_AXIS)
    above = screen_normal(Ball((0, 1, 0)), X_AXIS, "A", frame)
    below = screen_normal(Ball((0, -1, 0)), X_AXIS, "B", frame)
    assert above.height == pytest.approx(below.height)
    assert np.allclose(above.normal, -below.normal, atol=1e-12)
    assert numerical_rank(np.vstack([above.normal, below.normal]))[0] == 1


def test_tri_tangent_triple_has_rank_deficient_normals(tri_tang3):
    frame = ChartFrame.for_line(X_AXIS, center_on=tri_tang3.centers.mean(axis=0))
    normals = np.array([screen_normal(b, X_AXIS, lab, frame).normal
                        for lab, b in zip(tri_tang3.labels, tri_tang3.balls)])
    assert numerical_rank(normals)[0] == 2
    assert nonnegative_dependency(normals) is not None
