"""Classification of a line pinned by four tangent balls from its screen normals."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from geometry.core import Configuration, Line
from geometry.errors import InvalidInput
from geometry.tolerances import GEOM_TOL, RANK_TOL
from pinning.chart import ChartFrame, Screen, screen_normal
from pinning.pinned import triple_pinning_predicate

logger = logging.getLogger(__name__)

HYPERBOLOIDAL = "hyperboloidal"
COPLANAR_RIDGES = "coplanar_ridges"
CONCURRENT_RIDGES = "concurrent_ridges"
NOT_MINIMAL = "not_minimal"
NOT_PINNING = "not_pinning"


@dataclass(frozen=True)
class PinningClassification:
    case: str
    rank: int
    singular_values: tuple[float, ...]
    alternation: bool | None
    first_order_pinning: bool
    dependent_subsets: tuple[tuple[str, ...], ...]
    borderline: bool

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "rank": self.rank,
            "singular_values": list(self.singular_values),
            "alternation": self.alternation,
            "first_order_pinning": self.first_order_pinning,
            "dependent_subsets": ["".join(s) for s in self.dependent_subsets],
            "borderline": self.borderline,
        }


def numerical_rank(matrix: np.ndarray, tol: float = RANK_TOL) -> tuple[int, np.ndarray]:
    sv = np.linalg.svd(np.atleast_2d(matrix), compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0, sv
    return int(np.sum(sv > tol * sv[0])), sv


def nonnegative_dependency(normals: np.ndarray) -> np.ndarray | None:
    """lambda >= 0 summing to one with sum lambda_i n_i = 0, if any."""
    k = len(normals)
    a_eq = np.vstack([normals.T, np.ones((1, k))])
    b_eq = np.concatenate([np.zeros(normals.shape[1]), [1.0]])
    res = linprog(np.zeros(k), A_eq=a_eq, b_eq=b_eq, bounds=[(0, None)] * k, method="highs")
    return res.x if res.status == 0 else None


def alternation(frame: ChartFrame, screens: list[Screen], centers: np.ndarray,
                normals: np.ndarray) -> bool:
    """Sides of the ruling quadric through the ridges, read along the line.

    The null direction u* of the normal matrix spans the lines meeting all
    four ridges; near the pinned line they sweep a quadric whose normal at
    height z is perpendicular to (1 - z)(u1*, u2*) + z(u3*, u4*).
    """
    u = np.linalg.svd(normals)[2][-1]
    sides = []
    for screen, center in zip(screens, centers):
        z = screen.height
        m = (1.0 - z) * u[:2] + z * u[2:]
        quadric_normal = np.array([m[1], -m[0]])
        toward = frame.to_chart(center)[:2]
        side = float(np.dot(quadric_normal, toward))
        if abs(side) <= GEOM_TOL * max(1.0, np.linalg.norm(m)):
            return False
        sides.append((z, np.sign(side)))
    sides.sort()
    return all(a[1] * b[1] < 0 for a, b in zip(sides, sides[1:]))


def classify_minimal_pinning(cfg: Configuration, line: Line) -> PinningClassification:
    """Case of four balls tangent to `line`.

    Degenerate ridges (dependent pairs or triples of screen normals) are
    reported as such whatever the first-order status; the generic case is
    hyperboloidal only when the normals have a nonnegative dependency.
    """
    if len(cfg) != 4:
        raise InvalidInput(f"Classification needs four balls, got {len(cfg)}")
    frame = ChartFrame.for_line(line, center_on=cfg.centers.mean(axis=0))
    screens = [screen_normal(b, line, lab, frame) for lab, b in zip(cfg.labels, cfg.balls)]
    normals = np.array([s.normal for s in screens])
    rank, sv = numerical_rank(normals)
    ratio = sv / sv[0]
    borderline = bool(np.any((ratio > RANK_TOL / 100) & (ratio < RANK_TOL * 100)))
    if borderline:
        logger.warning("Screen normals are close to the rank threshold: %s", ratio)
    first_order = nonnegative_dependency(normals) is not None

    dependent = []
    for size in (2, 3):
        for subset in itertools.combinations(range(4), size):
            if numerical_rank(normals[list(subset)])[0] < size:
                dependent.append(subset)
    names = tuple(tuple(cfg.labels[i] for i in s) for s in dependent)

    def result(case, alt=None):
        return PinningClassification(case, rank, tuple(float(x) for x in sv), alt, first_order, names, borderline)

    if rank == 4:
        return result(NOT_PINNING)
    for triple in itertools.combinations(range(4), 3):
        x, y, z = (cfg.balls[i] for i in triple)
        if triple_pinning_predicate(x, y, z, line):
            return result(NOT_MINIMAL)
    if dependent:
        subset = dependent[0]
        heights = [screens[i].height for i in subset]
        if len(subset) == 2 or max(heights) - min(heights) <= GEOM_TOL:
            return result(CONCURRENT_RIDGES)
        return result(COPLANAR_RIDGES)
    # no nonnegative dependency: some motion enters every screen at first order
    if not first_order:
        return result(NOT_PINNING)
    return result(HYPERBOLOIDAL, alternation(frame, screens, cfg.centers, normals))
