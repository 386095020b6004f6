"""Shrinking balls until a transversal with a prescribed order is pinned."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from geometry.core import Configuration, Line, OrderedOrder, order_along
from geometry.errors import Infeasible, InvalidInput, NoInitialTransversal, TieError
from geometry.tolerances import GEOM_TOL, OPT_TOL
from transversal.solver import (
    DirectionObjective,
    NotFound,
    find_transversal,
    min_enclosing_radius,
    order_steps,
    polish_direction,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ShrinkResult:
    t_star: float
    line: Line
    order: OrderedOrder
    probes: int

    def to_dict(self) -> dict:
        return {"t_star": self.t_star, "line": self.line.to_dict(), "order": str(self.order), "probes": self.probes}


class _RadiusOracle:
    """Answers "is there a transversal of radius t?" for one center set.

    Keeps the best direction found so far and polishes it again before
    answering no.
    """

    def __init__(self, cfg: Configuration, order: OrderedOrder, start, seed: int, budget: int):
        self.objective = DirectionObjective(cfg.centers, order_steps(cfg, order))
        self.radius, self.v, self.point = min_enclosing_radius(cfg, order, [start], budget=budget, seed=seed)
        self.probes = 0

    def _refine(self) -> None:
        v, _ = polish_direction(self.objective, self.v, maxiter=2000, simplex_sizes=(1e-4, 1e-6, 1e-8))
        r, point = self.objective.radius(v)
        if r < self.radius and self.objective.margin(v) > 0:
            self.radius, self.v, self.point = r, v, point

    def feasible(self, t: float) -> bool:
        self.probes += 1
        if self.radius <= t:
            return True
        self._refine()
        return self.radius <= t

    def line(self) -> Line:
        return Line.through(self.point, self.v)


def _collinear_direction(cfg: Configuration) -> np.ndarray | None:
    centers = cfg.centers
    if len(centers) < 2:
        return None
    _, sv, vt = np.linalg.svd(centers - centers.mean(axis=0))
    if len(sv) > 1 and sv[1] > GEOM_TOL * max(1.0, sv[0]):
        return None
    return vt[0]


def _bisect(feasible, lo: float = 0.0, hi: float = 1.0, width: float = OPT_TOL) -> float:
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi


def shrink_to_pin(cfg: Configuration, order: OrderedOrder, seed: int = 0, budget: int = 2000) -> ShrinkResult:
    """Smallest common radius (as a fraction of the current one) keeping `order` realizable."""
    r = cfg.common_radius()
    axis = _collinear_direction(cfg)
    if axis is not None:
        try:
            realized = order_along(cfg, axis)
        except TieError:
            realized = None
        if realized == order.reversed():
            axis, realized = -axis, order
        if realized != order:
            raise NoInitialTransversal(f"Collinear centers admit no transversal in order {order}")
        return ShrinkResult(0.0, Line.through(cfg.centers.mean(axis=0), axis), order, 0)

    witness = find_transversal(cfg, order, budget=budget, seed=seed)
    if isinstance(witness, NotFound):
        raise NoInitialTransversal(f"No transversal in order {order} (best depth {witness.best_depth:.3e})")
    oracle = _RadiusOracle(cfg, order, witness.line.d, seed, budget)
    t_star = _bisect(lambda t: oracle.feasible(t * r))
    logger.info("Order %s pins at t* = %.12f after %d probes", order, t_star, oracle.probes)
    return ShrinkResult(t_star, oracle.line(), order, oracle.probes)


@dataclass(frozen=True)
class TwoStageResult:
    configuration: Configuration
    line1: Line
    line2: Line
    order1: OrderedOrder
    order2: OrderedOrder
    t1: float
    homothety: float

    def to_dict(self) -> dict:
        return {
            **self.configuration.to_dict(),
            "line1": self.line1.to_dict(),
            "line2": self.line2.to_dict(),
            "order1": str(self.order1),
            "order2": str(self.order2),
            "t1": self.t1,
            "homothety": self.homothety,
        }


def two_stage_shrink(cfg: Configuration, order1: OrderedOrder, order2: OrderedOrder,
                     seed: int = 0, budget: int = 2000) -> TwoStageResult:
    """Pin one order by uniform shrinking, then the other by shrinking towards the first line.

    In the second stage ball X shrinks with homothety center x0, the foot of
    its center on the first pinned line, so that line stays a pinned
    transversal. Output is rescaled to unit radius; line1 carries order1.
    """
    r = cfg.common_radius()
    for order in (order1, order2):
        if isinstance(find_transversal(cfg, order, budget=budget, seed=seed), NotFound):
            raise Infeasible(f"No transversal in order {order}")
    try:
        first = shrink_to_pin(cfg, order1, seed=seed, budget=budget)
        second = shrink_to_pin(cfg, order2, seed=seed, budget=budget)
    except NoInitialTransversal as e:
        raise Infeasible(str(e)) from e
    if first.t_star < second.t_star:
        first, second = second, first
    t1 = first.t_star
    if t1 <= 0.0:
        raise Infeasible("Centers are collinear; only one order is realizable")
    sigma1 = first.line
    logger.info("Stage one: %s pinned at t1 = %.12f", first.order, t1)

    centers = cfg.centers
    anchors = np.array([sigma1.foot_of(c) for c in centers])

    def shrunk(lam: float) -> Configuration:
        return Configuration.from_centers(anchors + lam * (centers - anchors), cfg.labels,
                                          radius=max(lam * t1 * r, 1e-300), allow_overlap=True)

    best = {"lam": 1.0, "line": second.line}

    def feasible(lam: float) -> bool:
        if lam <= 0.0:
            return False
        stage = shrunk(lam)
        radius, v, point = min_enclosing_radius(stage, second.order, [best["line"].d], budget=200, seed=seed)
        if radius <= lam * t1 * r:
            best["lam"], best["line"] = lam, Line.through(point, v)
            return True
        return False

    lam = _bisect(feasible)
    if lam != best["lam"]:
        raise Infeasible("Second stage lost the transversal at the feasible endpoint")
    rho = lam * t1 * r
    final = shrunk(lam)
    unit = Configuration.from_centers(final.centers / rho, cfg.labels, radius=1.0)
    line_first = Line.through(sigma1.p / rho, sigma1.d)
    line_second = Line.through(best["line"].p / rho, best["line"].d)
    if first.order == order1:
        line1, line2 = line_first, line_second
    else:
        line1, line2 = line_second, line_first
    logger.info("Stage two: %s pinned at homothety ratio %.12f", second.order, lam)
    return TwoStageResult(unit, line1, line2, order1, order2, t1, lam)
