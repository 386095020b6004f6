"""Triangle angle and side bounds for three balls stabbed in one or two orders."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from geometry.core import Ball, Configuration, Line, OrderedOrder, stabbing_order
from geometry.errors import InvalidInput, WrongOrder
from lemmas.angle import direction_angle

LABELS = ("X", "Y", "Z")


@dataclass(frozen=True)
class TriangleReport:
    angles: dict[str, float]
    constrained: tuple[str, ...]
    acute: dict[str, bool]
    yz: float
    yz_margin: float | None
    holds: bool

    def to_dict(self) -> dict:
        return {
            "angles": self.angles,
            "constrained": list(self.constrained),
            "acute": self.acute,
            "yz": self.yz,
            "yz_margin": self.yz_margin,
            "holds": self.holds,
        }


def _vertex_angle(centers: dict[str, np.ndarray], at: str) -> float:
    others = [lab for lab in LABELS if lab != at]
    return direction_angle(centers[others[0]] - centers[at], centers[others[1]] - centers[at])


def _check_witness(cfg: Configuration, line: Line, order: str) -> None:
    expected = OrderedOrder(tuple(order))
    realized = stabbing_order(cfg, line)
    if realized not in (expected, expected.reversed()):
        raise WrongOrder(f"Witness for {order} induces {realized}")


def check_triangle_lemmas(x: Ball, y: Ball, z: Ball, witness_xyz: Line | None = None,
                          witness_xzy: Line | None = None) -> TriangleReport:
    """Angle and side constraints on the triangle xyz implied by the given transversals.

    An XYZ transversal makes the angles at x and z acute; an XZY one those
    at x and y. With both, |yz| < 2 sqrt(2) as well.
    """
    if witness_xyz is None and witness_xzy is None:
        raise InvalidInput("At least one witness line is required")
    cfg = Configuration(LABELS, (x, y, z))
    constrained: set[str] = set()
    if witness_xyz is not None:
        _check_witness(cfg, witness_xyz, "XYZ")
        constrained |= {"X", "Z"}
    if witness_xzy is not None:
        _check_witness(cfg, witness_xzy, "XZY")
        constrained |= {"X", "Y"}

    centers = {lab: ball.c for lab, ball in zip(LABELS, (x, y, z))}
    angles = {lab: _vertex_angle(centers, lab) for lab in LABELS}
    acute = {lab: angles[lab] < math.pi / 2 for lab in LABELS}
    yz = float(np.linalg.norm(centers["Y"] - centers["Z"]))
    both = witness_xyz is not None and witness_xzy is not None
    yz_margin = 2.0 * math.sqrt(2.0) - yz if both else None
    holds = all(acute[lab] for lab in constrained) and (yz_margin is None or yz_margin > 0)
    return TriangleReport(angles, tuple(sorted(constrained)), acute, yz, yz_margin, holds)
