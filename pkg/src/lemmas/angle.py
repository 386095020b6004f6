"""Angle between a stabbing line and the chord joining its first and last balls."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from geometry.core import Ball, Configuration, Line, OrderedOrder, stabbing_order
from geometry.errors import WrongOrder
from geometry.tolerances import GEOM_TOL


@dataclass(frozen=True)
class AngleCheck:
    holds: bool
    angle: float

    @property
    def margin(self) -> float:
        return math.pi / 4 - self.angle

    def to_dict(self) -> dict:
        return {"holds": self.holds, "angle": self.angle, "margin": self.margin}


def direction_angle(u, v) -> float:
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    cos = np.dot(u, v) / (np.linalg.norm(u) * np.linalg.norm(v))
    return float(np.arccos(np.clip(cos, -1.0, 1.0)))


def check_angle_lemma(a: Ball, b: Ball, c: Ball, line: Line) -> AngleCheck:
    """Angle between the oriented line and c - a, for a line meeting A, B, C in that order."""
    cfg = Configuration(("A", "B", "C"), (a, b, c))
    realized = stabbing_order(cfg, line)
    if realized != OrderedOrder(("A", "B", "C")):
        raise WrongOrder(f"Line meets the balls in order {realized}, expected ABC")
    angle = direction_angle(line.d, c.c - a.c)
    return AngleCheck(angle < math.pi / 4 + GEOM_TOL, angle)
