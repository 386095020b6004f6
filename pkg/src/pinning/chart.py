"""Line coordinates in R^4, ridges and screens.

A chart is an orthonormal frame whose third axis runs along a reference
line; in it a non-horizontal line is the 4-tuple (u1, u2, u3, u4) of its
points at heights 0 and 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from geometry.core import Ball, Line
from geometry.errors import DegenerateChart, NotTangent
from geometry.tolerances import GEOM_TOL
from transversal.solver import perp_basis


class LineCoords4(NamedTuple):
    u1: float
    u2: float
    u3: float
    u4: float

    def as_array(self) -> np.ndarray:
        return np.array(self, dtype=float)


@dataclass(frozen=True)
class ChartFrame:
    origin: np.ndarray
    rotation: np.ndarray  # rows are the chart axes in world coordinates

    @classmethod
    def for_line(cls, line: Line, center_on=None) -> ChartFrame:
        """Chart in which `line` is the z-axis; origin at the foot of `center_on` if given."""
        e3 = line.d
        e1, e2 = perp_basis(e3)
        origin = line.p if center_on is None else line.foot_of(center_on)
        return cls(np.asarray(origin, dtype=float), np.vstack([e1, e2, e3]))

    def to_chart(self, points) -> np.ndarray:
        return (np.asarray(points, dtype=float) - self.origin) @ self.rotation.T

    def from_chart(self, points) -> np.ndarray:
        return np.asarray(points, dtype=float) @ self.rotation + self.origin

    def coords_of(self, line: Line) -> LineCoords4:
        p = self.rotation @ (line.p - self.origin)
        d = self.rotation @ line.d
        if abs(d[2]) < GEOM_TOL:
            raise DegenerateChart("Line is parallel to the chart's z = const planes")
        low = p - (p[2] / d[2]) * d
        high = p + ((1.0 - p[2]) / d[2]) * d
        return LineCoords4(low[0], low[1], high[0], high[1])

    def line_of(self, u) -> Line:
        u = np.asarray(u, dtype=float)
        low = self.from_chart([u[0], u[1], 0.0])
        high = self.from_chart([u[2], u[3], 1.0])
        return Line.through_points(low, high)


def line_to_coords4(line: Line, frame: ChartFrame) -> LineCoords4:
    """Chart coordinates, re-charting once with a tilted frame if needed."""
    try:
        return frame.coords_of(line)
    except DegenerateChart:
        tilt = np.linalg.qr(frame.rotation.T @ np.array([[1.0, 0.0, 0.3], [0.0, 1.0, 0.0], [-0.3, 0.0, 1.0]]))[0].T
        return ChartFrame(frame.origin, tilt).coords_of(line)


def coords4_to_line(u, frame: ChartFrame) -> Line:
    return frame.line_of(u)


def chart_slack(centers: np.ndarray, radii: np.ndarray, coords: np.ndarray) -> np.ndarray:
    """min over balls of radius - distance, for each row of chart coordinates (M, 4)."""
    coords = np.atleast_2d(coords)
    low = np.column_stack([coords[:, 0], coords[:, 1], np.zeros(len(coords))])
    direction = np.column_stack([coords[:, 2] - coords[:, 0], coords[:, 3] - coords[:, 1], np.ones(len(coords))])
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    offset = centers[None, :, :] - low[:, None, :]
    along = np.einsum("mnk,mk->mn", offset, direction)
    perp = offset - along[..., None] * direction[:, None, :]
    dist = np.linalg.norm(perp, axis=-1)
    return np.min(radii[None, :] - dist, axis=1)


def _tangency(ball: Ball, line: Line) -> tuple[np.ndarray, np.ndarray]:
    foot = line.foot_of(ball.c)
    offset = ball.c - foot
    if abs(np.linalg.norm(offset) - ball.radius) > GEOM_TOL:
        raise NotTangent(f"Line is not tangent to ball at {tuple(ball.center)}: "
                         f"distance {np.linalg.norm(offset):.12g}, radius {ball.radius:.12g}")
    return foot, offset


def ridge(ball: Ball, line: Line) -> Line:
    foot, offset = _tangency(ball, line)
    return Line.through(foot, np.cross(line.d, offset), oriented=False)


@dataclass(frozen=True)
class Screen:
    owner: str
    ridge: Line
    halfspace_normal_4d: tuple[float, float, float, float]
    height: float

    @property
    def normal(self) -> np.ndarray:
        return np.array(self.halfspace_normal_4d, dtype=float)


def screen_normal(ball: Ball, line: Line, owner: str = "X", frame: ChartFrame | None = None) -> Screen:
    """Outer unit normal of the halfspace of lines meeting the screen of `ball`.

    A line meets the screen iff its point at the tangency height z0 lies on
    the ball's side of the ridge: n . ((1 - z0)(u1, u2) + z0 (u3, u4)) >= 0.
    """
    foot, offset = _tangency(ball, line)
    frame = frame or ChartFrame.for_line(line)
    z0 = float(frame.to_chart(foot)[2])
    n = (frame.rotation @ offset)[:2]
    n = n / np.linalg.norm(n)
    w = np.concatenate([(1.0 - z0) * n, z0 * n])
    outer = -w / np.linalg.norm(w)
    return Screen(owner, ridge(ball, line), tuple(float(x) for x in outer), z0)
