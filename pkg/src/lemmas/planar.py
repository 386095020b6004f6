"""Planar line transversals to disks.

A line with unit normal n(theta) = (-sin theta, cos theta) and offset c is
{p : n . p = c}. For a fixed direction the offsets of transversals form an
interval, and half its length is the clearance of its midpoint line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from geometry.core import OrderedOrder, default_labels
from geometry.errors import InvalidInput, NotATransversal, NumericalFailure, TieError
from geometry.tolerances import GEOM_TOL


class Disk(NamedTuple):
    center: tuple[float, float]
    radius: float = 1.0


@dataclass(frozen=True)
class Line2:
    point: np.ndarray
    direction: np.ndarray

    @classmethod
    def through(cls, point, direction) -> Line2:
        d = np.asarray(direction, dtype=float)
        norm = np.linalg.norm(d)
        if norm < 1e-15:
            raise InvalidInput("Zero direction")
        return cls(np.asarray(point, dtype=float), d / norm)

    @property
    def angle(self) -> float:
        return math.atan2(self.direction[1], self.direction[0])

    @property
    def offset(self) -> float:
        return float(_normal(self.angle) @ self.point)

    def to_dict(self) -> dict:
        return {"point": self.point.tolist(), "direction": self.direction.tolist()}


@dataclass(frozen=True)
class PlanarTransversal:
    line: Line2
    clearance: float
    order: OrderedOrder

    def to_dict(self) -> dict:
        return {"line": self.line.to_dict(), "clearance": self.clearance, "order": str(self.order)}


def _normal(theta: float) -> np.ndarray:
    return np.array([-math.sin(theta), math.cos(theta)])


def _arrays(disks: Sequence[Disk]) -> tuple[np.ndarray, np.ndarray]:
    centers = np.array([d.center for d in disks], dtype=float).reshape(-1, 2)
    radii = np.array([d.radius for d in disks], dtype=float)
    return centers, radii


def planar_order(disks: Sequence[Disk], line: Line2, labels: Sequence[str] | None = None) -> OrderedOrder:
    centers, radii = _arrays(disks)
    labels = tuple(labels) if labels is not None else default_labels(len(disks))
    dist = np.abs(centers @ _normal(line.angle) - line.offset)
    if np.any(dist > radii + GEOM_TOL):
        raise NotATransversal("Line misses a disk")
    s = centers @ line.direction
    idx = np.argsort(s, kind="stable")
    if np.any(np.diff(s[idx]) < GEOM_TOL):
        raise TieError("Two disks project to the same position")
    return OrderedOrder(tuple(labels[i] for i in idx))


def _clearance(centers: np.ndarray, radii: np.ndarray, theta: float) -> tuple[float, float]:
    proj = centers @ _normal(theta)
    lo = np.max(proj - radii)
    hi = np.min(proj + radii)
    return 0.5 * (hi - lo), 0.5 * (hi + lo)


def interior_transversal_2d(disks: Sequence[Disk], l1: Line2, l2: Line2,
                            labels: Sequence[str] | None = None) -> PlanarTransversal:
    """A line through the interior of every disk, in the order l1 and l2 share.

    Directions between those of l1 and l2 are scanned for the one whose
    offset interval is widest; its midpoint line is returned.
    """
    centers, radii = _arrays(disks)
    order1 = planar_order(disks, l1, labels)
    order2 = planar_order(disks, l2, labels)
    if order2 == order1.reversed():
        l2 = Line2.through(l2.point, -l2.direction)
    elif order2 != order1:
        raise InvalidInput(f"Transversals induce different orders: {order1} and {order2}")
    same_direction = abs(abs(float(l1.direction @ l2.direction)) - 1.0) < GEOM_TOL
    if same_direction and abs(l1.offset - float(_normal(l1.angle) @ l2.point)) < GEOM_TOL:
        raise InvalidInput("The two transversals coincide")

    theta1 = l1.angle
    delta = math.remainder(l2.angle - theta1, 2.0 * math.pi)
    grid = theta1 + delta * np.linspace(0.0, 1.0, 201)
    scores = [_clearance(centers, radii, t)[0] for t in grid]
    k = int(np.argmax(scores))
    theta = float(grid[k])
    if delta != 0.0:
        lo, hi = sorted((grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)]))
        res = minimize_scalar(lambda t: -_clearance(centers, radii, t)[0], bounds=(lo, hi), method="bounded",
                              options={"xatol": 1e-12})
        if -res.fun > scores[k]:
            theta = float(res.x)
    clearance, offset = _clearance(centers, radii, theta)
    if clearance <= 0.0:
        raise NumericalFailure("No interior transversal between the given lines")
    line = Line2.through(offset * _normal(theta), [math.cos(theta), math.sin(theta)])
    order = planar_order(disks, line, labels)
    if order != order1:
        raise NumericalFailure(f"Interior line induces {order}, expected {order1}")
    return PlanarTransversal(line, float(clearance), order)
