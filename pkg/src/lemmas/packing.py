"""Maximin point packings in a unit cylinder and in two crossing cylinders.

These are refuters: they report the best packing found, and a minimum
distance below two is evidence, not proof, that no better packing exists.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from geometry.core import Point3
from geometry.errors import BadAngle, InvalidInput
from geometry.sampling import make_rng
from geometry.tolerances import GEOM_TOL

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Cylinder:
    """Solid cylinder around anchor + s * direction, with lo <= s <= hi."""

    anchor: np.ndarray
    direction: np.ndarray
    radius: float = 1.0
    lo: float = -math.inf
    hi: float = math.inf

    def split(self, points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        w = points - self.anchor
        s = w @ self.direction
        return s, w - np.outer(s, self.direction)

    def project(self, points: np.ndarray) -> np.ndarray:
        s, perp = self.split(points)
        s = np.clip(s, self.lo, self.hi)
        norm = np.linalg.norm(perp, axis=1, keepdims=True)
        scale = np.where(norm > self.radius, self.radius / np.maximum(norm, 1e-300), 1.0)
        return self.anchor + np.outer(s, self.direction) + perp * scale

    def violation(self, points: np.ndarray) -> float:
        s, perp = self.split(points)
        radial = np.linalg.norm(perp, axis=1) - self.radius
        axial = np.maximum(self.lo - s, s - self.hi)
        return float(max(radial.max(), axial.max(), 0.0))

    def constraints(self, points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Values >= 0 inside, with their gradients w.r.t. the flattened points."""
        n = len(points)
        s, perp = self.split(points)
        values = [self.radius ** 2 - np.sum(perp * perp, axis=1)]
        grads = [-2.0 * perp]
        if math.isfinite(self.lo):
            values.append(s - self.lo)
            grads.append(np.tile(self.direction, (n, 1)))
        if math.isfinite(self.hi):
            values.append(self.hi - s)
            grads.append(np.tile(-self.direction, (n, 1)))
        jac = np.zeros((len(values) * n, 3 * n))
        for k, g in enumerate(grads):
            for i in range(n):
                jac[k * n + i, 3 * i:3 * i + 3] = g[i]
        return np.concatenate(values), jac


@dataclass(frozen=True)
class PackingReport:
    points: tuple[Point3, ...]
    min_pairwise_distance: float
    target_count: int
    converged: bool
    region: str

    def to_dict(self) -> dict:
        return {
            "region": self.region,
            "points": [list(p) for p in self.points],
            "min_pairwise_distance": self.min_pairwise_distance,
            "target_count": self.target_count,
            "converged": self.converged,
        }


def min_pairwise_distance(points: np.ndarray) -> float:
    if len(points) < 2:
        return math.inf
    i, j = np.triu_indices(len(points), 1)
    return float(np.min(np.linalg.norm(points[i] - points[j], axis=1)))


def _project(region: tuple[Cylinder, ...], points: np.ndarray, iterations: int = 2000) -> np.ndarray:
    for _ in range(iterations):
        if max(c.violation(points) for c in region) <= GEOM_TOL * 1e-3:
            break
        for c in region:
            points = c.project(points)
    return points


def _maximin(region: tuple[Cylinder, ...], start: np.ndarray, maxiter: int) -> tuple[np.ndarray, bool]:
    n = len(start)
    i, j = np.triu_indices(n, 1)

    def unpack(z):
        return z[:-1].reshape(n, 3), z[-1]

    def pair_values(z):
        p, t = unpack(z)
        diff = p[i] - p[j]
        return np.sum(diff * diff, axis=1) - t

    def pair_jac(z):
        p, _ = unpack(z)
        diff = p[i] - p[j]
        jac = np.zeros((len(i), 3 * n + 1))
        for k, (a, b) in enumerate(zip(i, j)):
            jac[k, 3 * a:3 * a + 3] = 2.0 * diff[k]
            jac[k, 3 * b:3 * b + 3] = -2.0 * diff[k]
        jac[:, -1] = -1.0
        return jac

    def region_values(z):
        p, _ = unpack(z)
        return np.concatenate([c.constraints(p)[0] for c in region])

    def region_jac(z):
        p, _ = unpack(z)
        blocks = [c.constraints(p)[1] for c in region]
        jac = np.vstack(blocks)
        return np.hstack([jac, np.zeros((len(jac), 1))])

    z0 = np.concatenate([start.ravel(), [min_pairwise_distance(start) ** 2]])
    res = minimize(lambda z: -z[-1], z0, jac=lambda z: np.concatenate([np.zeros(3 * n), [-1.0]]),
                   method="SLSQP",
                   constraints=[{"type": "ineq", "fun": pair_values, "jac": pair_jac},
                                {"type": "ineq", "fun": region_values, "jac": region_jac}],
                   options={"maxiter": maxiter, "ftol": 1e-14})
    return unpack(res.x)[0], bool(res.success)


def _pack(region: tuple[Cylinder, ...], span: tuple[float, float], count: int, budget: int, seed: int,
          name: str) -> PackingReport:
    if count < 1:
        raise InvalidInput("count must be positive")
    best_points, best_value, converged = None, -math.inf, False
    for k in range(max(1, budget)):
        rng = make_rng(seed, 11, k)
        start = np.column_stack([rng.uniform(span[0], span[1], count), rng.uniform(-1, 1, (count, 2))])
        start = _project(region, start)
        points, ok = _maximin(region, start, maxiter=500) if count > 1 else (start, True)
        points = _project(region, points)
        if max(c.violation(points) for c in region) > GEOM_TOL:
            continue
        value = min_pairwise_distance(points) if count > 1 else math.inf
        converged = converged or ok
        if value > best_value:
            best_points, best_value = points, value
    if best_points is None:
        raise InvalidInput(f"No feasible packing found in {name}")
    logger.info("%s: best min distance %.9f for %d points over %d starts", name, best_value, count, budget)
    return PackingReport(tuple(Point3.of(p) for p in best_points), float(best_value), count, converged, name)


def pack_cylinder(length: float, count: int, budget: int = 32, seed: int = 0) -> PackingReport:
    """Points in the unit-radius cylinder 0 <= x <= length around the x-axis."""
    if length < 0:
        raise InvalidInput(f"length must be nonnegative, got {length}")
    axis = Cylinder(np.array([0.0, 0.0, 0.0]), np.array([1.0, 0.0, 0.0]), 1.0, 0.0, float(length))
    return _pack((axis,), (0.0, float(length)), count, budget, seed, f"cylinder(length={length})")


def pack_two_cylinders(theta: float, offset: float, count: int, budget: int = 32,
                       seed: int = 0) -> PackingReport:
    """Points in two unit cylinders whose axes cross at angle theta.

    The first axis is the x-axis, the second passes through (0, 0, offset)
    with direction (cos theta, sin theta, 0).
    """
    if not (math.pi / 4 < theta <= math.pi / 2 + GEOM_TOL):
        raise BadAngle(f"theta must lie in (pi/4, pi/2], got {theta}")
    if offset < 0:
        raise InvalidInput(f"offset is a distance, got {offset}")
    first = Cylinder(np.zeros(3), np.array([1.0, 0.0, 0.0]))
    second = Cylinder(np.array([0.0, 0.0, float(offset)]), np.array([math.cos(theta), math.sin(theta), 0.0]))
    extent = 1.0 / math.sin(theta) + 1.0 / math.tan(theta) + 1.0
    return _pack((first, second), (-extent, extent), count, budget, seed,
                 f"two_cylinders(theta={theta:.6f}, offset={offset})")
