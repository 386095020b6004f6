"""Transversal existence in direction space.

A line with direction v meets every ball of a congruent family iff the
smallest enclosing circle of the centers projected onto v-perp has radius
at most the common radius, so existence for a given order becomes a
search over the sphere of directions.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from geometry.core import Configuration, Line, OrderedOrder, Point3, stabbing_order
from geometry.errors import InvalidInput, NotATransversal, TieError
from geometry.sampling import jittered_directions
from geometry.tolerances import GEOM_TOL
from transversal.sec import sec_batch, smallest_enclosing_circle

logger = logging.getLogger(__name__)

ORDER_EPS = 1e-6
_BATCH_CELLS = 2_000_000


@dataclass(frozen=True)
class DepthResult:
    depth: float
    witness_axis_point: Point3
    direction: Point3

    def witness_line(self) -> Line:
        return Line.through(self.witness_axis_point, self.direction)


@dataclass(frozen=True)
class TransversalWitness:
    line: Line
    order: OrderedOrder
    depth: float

    def to_dict(self) -> dict:
        return {"line": self.line.to_dict(), "order": str(self.order), "depth": self.depth}


@dataclass(frozen=True)
class NotFound:
    """Budget exhausted; says nothing about existence."""

    target: OrderedOrder
    best_depth: float
    best_order_margin: float
    evaluated: int

    def __bool__(self):
        return False

    def to_dict(self) -> dict:
        return {"status": "not_found", "order": str(self.target), "best_depth": self.best_depth,
                "best_order_margin": self.best_order_margin, "evaluated": self.evaluated}


def _unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    norm = np.linalg.norm(v, axis=-1, keepdims=True)
    if np.any(norm < 1e-15):
        raise InvalidInput("Zero direction vector")
    return v / norm


def perp_basis(v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic orthonormal basis of v-perp; works row-wise on (M, 3)."""
    v = np.asarray(v, dtype=float)
    single = v.ndim == 1
    v2 = np.atleast_2d(v)
    axis = np.eye(3)[np.argmin(np.abs(v2), axis=1)]
    u1 = np.cross(v2, axis)
    u1 /= np.linalg.norm(u1, axis=1, keepdims=True)
    u2 = np.cross(v2, u1)
    if single:
        return u1[0], u2[0]
    return u1, u2


def project_centers(cfg: Configuration, v) -> np.ndarray:
    v = _unit(v)
    u1, u2 = perp_basis(v)
    centers = cfg.centers
    return np.column_stack([centers @ u1, centers @ u2])


def depth(cfg: Configuration, v) -> DepthResult:
    r = cfg.common_radius()
    v = _unit(v)
    u1, u2 = perp_basis(v)
    circle = smallest_enclosing_circle(project_centers(cfg, v))
    lifted = circle.center[0] * u1 + circle.center[1] * u2
    return DepthResult(r - circle.r, Point3.of(lifted), Point3.of(v))


def _depth_rows(centers: np.ndarray, radius: float, dirs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    u1, u2 = perp_basis(dirs)
    pts = np.stack([u1 @ centers.T, u2 @ centers.T], axis=-1)
    sec_c, sec_r = sec_batch(pts)
    lifted = sec_c[:, :1] * u1 + sec_c[:, 1:] * u2
    return radius - sec_r, lifted


def depth_batch_arrays(centers: np.ndarray, radius: float, dirs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = len(centers)
    cells = max(1, (n * (n - 1) // 2 + n * (n - 1) * (n - 2) // 6) * n)
    rows = max(64, _BATCH_CELLS // cells)
    depths, points = [], []
    for start in range(0, len(dirs), rows):
        d, p = _depth_rows(centers, radius, dirs[start:start + rows])
        depths.append(d)
        points.append(p)
    if not depths:
        return np.empty(0), np.empty((0, 3))
    return np.concatenate(depths), np.concatenate(points)


def depth_batch(cfg: Configuration, dirs) -> np.ndarray:
    dirs = _unit(np.atleast_2d(dirs))
    return depth_batch_arrays(cfg.centers, cfg.common_radius(), dirs)[0]


def order_steps(cfg: Configuration, target: OrderedOrder) -> np.ndarray:
    if sorted(target.labels) != sorted(cfg.labels):
        raise InvalidInput(f"Order {target} is not a permutation of {''.join(cfg.labels)}")
    centers = cfg.centers[[cfg.index(lab) for lab in target]]
    steps = np.diff(centers, axis=0)
    return steps / np.linalg.norm(steps, axis=1, keepdims=True)


def order_margin(cfg: Configuration, target: OrderedOrder, v) -> np.ndarray | float:
    """min over consecutive pairs of v.(c_next - c_prev)/|c_next - c_prev|."""
    steps = order_steps(cfg, target)
    v = np.asarray(v, dtype=float)
    if len(steps) == 0:
        return np.ones(len(v)) if v.ndim == 2 else 1.0
    margins = (np.atleast_2d(v) @ steps.T).min(axis=1)
    return margins if v.ndim == 2 else float(margins[0])


class DirectionObjective:
    """R(v) plus an exact penalty pushing v into the region ordered by target."""

    def __init__(self, centers: np.ndarray, steps: np.ndarray):
        self.centers = centers
        self.steps = steps
        spread = np.max(np.linalg.norm(centers[:, None] - centers[None, :], axis=-1)) if len(centers) > 1 else 0.0
        self.weight = 4.0 * (1.0 + spread)
        self.calls = 0

    def margin(self, v: np.ndarray) -> float:
        return float(np.min(self.steps @ v)) if len(self.steps) else 1.0

    def radius(self, v: np.ndarray) -> tuple[float, np.ndarray]:
        u1, u2 = perp_basis(v)
        circle = smallest_enclosing_circle(np.column_stack([self.centers @ u1, self.centers @ u2]))
        return circle.r, circle.center[0] * u1 + circle.center[1] * u2

    def __call__(self, v: np.ndarray) -> float:
        self.calls += 1
        r, _ = self.radius(v)
        return r + self.weight * max(0.0, ORDER_EPS - self.margin(v))

    def batch(self, dirs: np.ndarray, radius: float) -> np.ndarray:
        depths, _ = depth_batch_arrays(self.centers, radius, dirs)
        margins = (dirs @ self.steps.T).min(axis=1) if len(self.steps) else np.ones(len(dirs))
        return (radius - depths) + self.weight * np.maximum(0.0, ORDER_EPS - margins)


def polish_direction(fun, v0: np.ndarray, maxiter: int = 600,
                     simplex_sizes=(5e-2, 1e-3, 1e-5)) -> tuple[np.ndarray, float]:
    """Nelder-Mead restarts in the tangent chart of the sphere at v0."""
    best_v = _unit(v0)
    best_f = fun(best_v)
    for size in simplex_sizes:
        u1, u2 = perp_basis(best_v)
        base = best_v.copy()

        def chart(x, base=base, u1=u1, u2=u2):
            w = base + x[0] * u1 + x[1] * u2
            return fun(w / np.linalg.norm(w))

        res = minimize(chart, np.zeros(2), method="Nelder-Mead",
                       options={"xatol": 1e-13, "fatol": 1e-15, "maxiter": maxiter,
                                "initial_simplex": np.array([[0.0, 0.0], [size, 0.0], [0.0, size]])})
        if res.fun < best_f:
            w = base + res.x[0] * u1 + res.x[1] * u2
            best_v, best_f = w / np.linalg.norm(w), float(res.fun)
    return best_v, best_f


def find_transversal(cfg: Configuration, target: OrderedOrder, budget: int = 2000, seed: int = 0,
                     starts=None, polish: int = 8) -> TransversalWitness | NotFound:
    radius = cfg.common_radius()
    objective = DirectionObjective(cfg.centers, order_steps(cfg, target))

    dirs = jittered_directions(max(budget, 1), seed)
    if starts is not None and len(starts):
        dirs = np.vstack([_unit(np.atleast_2d(starts)), dirs])
    scores = objective.batch(dirs, radius)
    picks = np.argsort(scores, kind="stable")[:max(1, polish)]

    best_v, best_f = dirs[picks[0]], float("inf")
    for i in picks:
        v, f = polish_direction(objective, dirs[i])
        if f < best_f:
            best_v, best_f = v, f

    r_sec, lifted = objective.radius(best_v)
    margin = objective.margin(best_v)
    achieved = radius - r_sec
    evaluated = len(dirs) + objective.calls
    if achieved >= -GEOM_TOL and margin > GEOM_TOL:
        line = Line.through(lifted, best_v)
        try:
            realized = stabbing_order(cfg, line)
        except (NotATransversal, TieError) as e:
            logger.debug("Witness for %s failed validation: %s", target, e)
            realized = None
        if realized == target:
            return TransversalWitness(line, target, achieved)
    logger.debug("No transversal for %s: depth %.3e, margin %.3e", target, achieved, margin)
    return NotFound(target, achieved, margin, evaluated)


def min_enclosing_radius(cfg: Configuration, target: OrderedOrder, starts, budget: int = 500,
                         seed: int = 0, polish: int = 4) -> tuple[float, np.ndarray, np.ndarray]:
    """Smallest projected radius over directions realizing target.

    Returns (radius, direction, lifted SEC center). Ball radii are ignored.
    """
    objective = DirectionObjective(cfg.centers, order_steps(cfg, target))
    dirs = jittered_directions(max(budget, 1), seed)
    if starts is not None and len(starts):
        dirs = np.vstack([_unit(np.atleast_2d(starts)), dirs])
    scores = objective.batch(dirs, 1.0)
    best_v, best_f = dirs[0], float("inf")
    for i in np.argsort(scores, kind="stable")[:max(1, polish)]:
        v, f = polish_direction(objective, dirs[i], maxiter=2000,
                                simplex_sizes=(5e-2, 1e-3, 1e-5, 1e-7))
        if f < best_f:
            best_v, best_f = v, f
    r_sec, lifted = objective.radius(best_v)
    if objective.margin(best_v) < 0:
        return float("inf"), best_v, lifted
    return r_sec, best_v, lifted
