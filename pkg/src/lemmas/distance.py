"""Extreme-pair distance checks for stabbed three- and four-ball families."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from geometry.core import Configuration, Line, OrderedOrder, stabbing_order
from geometry.errors import InvalidInput, WrongOrder


@dataclass(frozen=True)
class DistanceCheck:
    holds: bool
    margin: float
    order: OrderedOrder

    def to_dict(self) -> dict:
        return {"holds": self.holds, "margin": self.margin, "order": str(self.order)}


def _validated_order(cfg: Configuration, line: Line, size: int) -> OrderedOrder:
    if len(cfg) != size:
        raise InvalidInput(f"Expected {size} balls, got {len(cfg)}")
    expected = OrderedOrder(cfg.labels)
    realized = stabbing_order(cfg, line)
    if realized not in (expected, expected.reversed()):
        raise WrongOrder(f"Line induces {realized}, expected {expected}")
    return expected


def _dist(cfg: Configuration, u: str, v: str) -> float:
    return float(np.linalg.norm(cfg.ball(u).c - cfg.ball(v).c))


def check_distance_lemma(cfg: Configuration, line: Line) -> DistanceCheck:
    """|ad| against max(|ab|, |bc|, |cd|) for a line meeting A, B, C, D in label order."""
    order = _validated_order(cfg, line, 4)
    a, b, c, d = order.labels
    margin = _dist(cfg, a, d) - max(_dist(cfg, a, b), _dist(cfg, b, c), _dist(cfg, c, d))
    return DistanceCheck(margin > 0.0, margin, order)


def check_three_ball_distance(cfg: Configuration, line: Line) -> DistanceCheck:
    """|ac| against |ab| for three balls; this one is allowed to fail."""
    order = _validated_order(cfg, line, 3)
    a, b, c = order.labels
    margin = _dist(cfg, a, c) - _dist(cfg, a, b)
    return DistanceCheck(margin > 0.0, margin, order)
