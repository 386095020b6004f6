"""Pinning detection by perturbation scans, and the three-ball pinning test."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from geometry.core import Ball, Configuration, Line, OrderedOrder, stabbing_order
from geometry.errors import NotATransversal, TieError
from geometry.sampling import make_rng, unit_vectors
from geometry.tolerances import (
    DEFAULT_SCAN_RADIUS,
    GEOM_TOL,
    PIN_SAMPLES,
    PIN_SHELLS,
    PIN_SLACK_REL,
)
from pinning.chart import ChartFrame, chart_slack

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PinningCertificate:
    pinned: bool
    scan_radius: float
    min_constraint_slack: float
    order: OrderedOrder | None
    shells: tuple[dict, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "pinned": self.pinned,
            "scan_radius": self.scan_radius,
            "min_constraint_slack": self.min_constraint_slack,
            "order": str(self.order) if self.order is not None else None,
            "shells": list(self.shells),
        }


def is_pinned(cfg: Configuration, line: Line, scan_radius: float = DEFAULT_SCAN_RADIUS,
              seed: int = 0, samples: int = PIN_SAMPLES) -> PinningCertificate:
    """Scan perturbations of `line` on nested 3-spheres in line coordinates.

    min_constraint_slack is the largest slack any perturbation achieves;
    the line is pinned when even that one misses a ball.
    """
    centers, radii = cfg.centers, cfg.radii
    base = np.min(radii - np.linalg.norm(
        (centers - line.p) - np.outer((centers - line.p) @ line.d, line.d), axis=1))
    if base < -GEOM_TOL:
        raise NotATransversal(f"Line misses a ball by {-base:.3e}")
    try:
        order = stabbing_order(cfg, line)
    except TieError:
        order = None

    frame = ChartFrame.for_line(line, center_on=centers.mean(axis=0))
    local = frame.to_chart(centers)
    worst = -np.inf
    survivors = 0
    shells = []
    for k, factor in enumerate(PIN_SHELLS):
        rho = scan_radius * factor
        perturbations = rho * unit_vectors(make_rng(seed, 7, k), samples, 4)
        slack = chart_slack(local, radii, perturbations)
        best = float(slack.max())
        surviving = int((slack >= -PIN_SLACK_REL * rho * rho).sum())
        shells.append({"radius": rho, "max_slack": best, "surviving": surviving})
        worst = max(worst, best)
        survivors += surviving
    pinned = survivors == 0
    logger.debug("Pinning scan: pinned=%s, best perturbation slack %.3e", pinned, worst)
    return PinningCertificate(pinned, scan_radius, float(worst), order, tuple(shells))


def triple_pinning_predicate(x: Ball, y: Ball, z: Ball, line: Line) -> bool:
    """Tangent, coplanar with the line, and the middle center on the other side."""
    balls = [x, y, z]
    radius = x.radius
    if any(abs(b.radius - radius) > GEOM_TOL for b in balls):
        return False
    params = np.array([line.parameter_of(b.c) for b in balls])
    offsets = np.array([b.c - line.point_at(s) for b, s in zip(balls, params)])
    if np.any(np.abs(np.linalg.norm(offsets, axis=1) - radius) > GEOM_TOL):
        return False
    for i in range(3):
        for j in range(i + 1, 3):
            if np.linalg.norm(np.cross(offsets[i], offsets[j])) > GEOM_TOL * radius * radius:
                return False
    order = np.argsort(params)
    if np.min(np.diff(params[order])) < GEOM_TOL:
        return False
    first, middle, last = offsets[order]
    return bool(np.dot(middle, first) < 0 and np.dot(middle, last) < 0)
