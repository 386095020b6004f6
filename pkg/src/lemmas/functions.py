"""Closed-form special functions and the grid scans that exercise them.

g(phi) = sqrt(2 + 2 cos phi) is the chord length between unit vectors at
angle pi - phi. f(x) = sin x (sin x + cos x) governs the double-pinning
bound. For two unit balls with centers (0, 0, 0) and (d, 0, b), G(z) is the
largest angle a transversal in the plane at height z can make with the
x-axis: G = arcsin((R(z) + R(z - b)) / d) with R(z) = sqrt(1 - z^2).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from geometry.errors import DomainError
from geometry.sampling import make_rng
from geometry.tolerances import FD_EDGE, FD_STEP, GEOM_TOL

logger = logging.getLogger(__name__)

EQUALITY_TOL = 1e-6


def g(phi):
    return np.sqrt(np.clip(2.0 + 2.0 * np.cos(phi), 0.0, None))


def f(x):
    return np.sin(x) * (np.sin(x) + np.cos(x))


def abc_expression(x):
    """sin^2 x + (cot x + sin x - 1)^2."""
    x = np.asarray(x, dtype=float)
    return np.sin(x) ** 2 + (1.0 / np.tan(x) + np.sin(x) - 1.0) ** 2


def abc_factors(x) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Factors whose product is abc_expression(x) - 1."""
    x = np.asarray(x, dtype=float)
    cot = 1.0 / np.tan(x)
    return cot + np.sin(x) + np.cos(x) - 1.0, cot - 1.0, 1.0 - np.sin(x)


def double_pinning_bound(ab: float) -> float:
    """|ap| = 2 / (sin gamma (sin gamma + cos gamma)) with gamma = arcsin(2 / |ab|)."""
    if ab < 2.0:
        raise DomainError(f"|ab| must be at least 2, got {ab}")
    gamma = math.asin(2.0 / ab)
    return 2.0 / float(f(gamma))


def R(z):
    return np.sqrt(np.clip(1.0 - np.asarray(z, dtype=float) ** 2, 0.0, None))


def R1(z):
    z = np.asarray(z, dtype=float)
    return -z / (1.0 - z * z) ** 0.5


def R2(z):
    z = np.asarray(z, dtype=float)
    return -1.0 / (1.0 - z * z) ** 1.5


def R3(z):
    z = np.asarray(z, dtype=float)
    return -3.0 * z / (1.0 - z * z) ** 2.5


@dataclass(frozen=True)
class BallPair:
    """Unit balls centered at the origin and at (d, 0, b)."""

    d: float
    b: float

    def __post_init__(self):
        if self.d <= 0 or not (0.0 <= self.b <= 2.0):
            raise DomainError(f"Need d > 0 and 0 <= b <= 2, got d={self.d}, b={self.b}")
        if self.d ** 2 + self.b ** 2 < 4.0 - GEOM_TOL:
            raise DomainError(f"Balls overlap for d={self.d}, b={self.b}")

    def check_domain(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=float)
        if np.any(z < self.b - 1.0) or np.any(z > 1.0):
            raise DomainError(f"z must lie in [{self.b - 1.0}, 1]")
        return z

    def f(self, z):
        z = self.check_domain(z)
        return (R(z) + R(z - self.b)) / self.d

    def f1(self, z):
        z = self.check_domain(z)
        return (R1(z) + R1(z - self.b)) / self.d

    def f2(self, z):
        z = self.check_domain(z)
        return (R2(z) + R2(z - self.b)) / self.d

    def f3(self, z):
        z = self.check_domain(z)
        return (R3(z) + R3(z - self.b)) / self.d

    def G(self, z):
        return np.arcsin(np.clip(self.f(z), -1.0, 1.0))

    def G1(self, z):
        fz = self.f(z)
        return self.f1(z) / np.sqrt(1.0 - fz * fz)

    def G2(self, z):
        fz, f1, f2 = self.f(z), self.f1(z), self.f2(z)
        one_minus = 1.0 - fz * fz
        return (f2 * one_minus + fz * f1 * f1) / one_minus ** 1.5

    def G2_finite_difference(self, z, step: float = FD_STEP):
        """Central second difference of G with one Richardson step."""
        z = np.asarray(z, dtype=float)

        def central(h):
            return (self.G(z + h) - 2.0 * self.G(z) + self.G(z - h)) / (h * h)

        return (4.0 * central(step / 2.0) - central(step)) / 3.0


@dataclass(frozen=True)
class AngleFunctionTable:
    pair: BallPair
    z: np.ndarray
    G: np.ndarray
    G1: np.ndarray
    G2: np.ndarray
    G2_fd: np.ndarray

    @classmethod
    def build(cls, pair: BallPair, points: int = 200, edge: float = FD_EDGE) -> AngleFunctionTable:
        """Samples on [b/2 + edge, 1 - edge], away from the singular ends."""
        z = np.linspace(pair.b / 2.0 + edge, 1.0 - edge, points)
        return cls(pair, z, pair.G(z), pair.G1(z), pair.G2(z), pair.G2_finite_difference(z))

    def to_dict(self) -> dict:
        return {"d": self.pair.d, "b": self.pair.b, "z": self.z.tolist(), "G": self.G.tolist(),
                "G1": self.G1.tolist(), "G2": self.G2.tolist(), "G2_fd": self.G2_fd.tolist()}


@dataclass(frozen=True)
class ScanResult:
    name: str
    points: int
    worst: float
    violations: int
    detail: dict

    @property
    def holds(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        return {"name": self.name, "points": self.points, "worst": self.worst,
                "violations": self.violations, "holds": self.holds, **self.detail}


def _is_pi(a: np.ndarray, tol: float = EQUALITY_TOL) -> np.ndarray:
    return np.abs(np.mod(a, 2.0 * math.pi) - math.pi) <= tol


def scan_g_superadditivity(points: int = 200, tol: float = GEOM_TOL) -> ScanResult:
    """g(x + y + z) <= g(x) + g(y) + g(z) over a points^3 grid of [0, 2 pi)^3.

    Near-equality cells must have two arguments equal to pi mod 2 pi.
    """
    grid = np.linspace(0.0, 2.0 * math.pi, points, endpoint=False)
    gy = g(grid)[:, None] + g(grid)[None, :]
    y, z = np.meshgrid(grid, grid, indexing="ij")
    pi_y, pi_z = _is_pi(y), _is_pi(z)
    worst, violations, equalities, unexplained = -math.inf, 0, 0, 0
    for x in grid:
        diff = g(x + y + z) - (g(x) + gy)
        worst = max(worst, float(diff.max()))
        violations += int((diff > tol).sum())
        close = np.abs(diff) <= EQUALITY_TOL
        equalities += int(close.sum())
        two_pi = (pi_y & pi_z) | (_is_pi(np.array(x)) & (pi_y | pi_z))
        unexplained += int((close & ~two_pi).sum())
    logger.info("g scan: worst %.3e, %d violations, %d equality cells", worst, violations, equalities)
    return ScanResult("g_superadditivity", points ** 3, worst, violations,
                      {"equality_cells": equalities, "unexplained_equalities": unexplained})


def _open_interval(points: int) -> np.ndarray:
    return np.linspace(math.pi / 4, math.pi / 2, points + 2)[1:-1]


def scan_f_above_one(points: int = 10_000, tol: float = 0.0) -> ScanResult:
    x = _open_interval(points)
    gap = f(x) - 1.0
    return ScanResult("f_above_one", points, float(gap.min()), int((gap <= tol).sum()), {})


def scan_abc_below_one(points: int = 10_000, tol: float = 0.0) -> ScanResult:
    """1 - abc_expression(x) > tol, computed from the factorization, with sign checks per factor.

    The gap vanishes like (pi/2 - x)^3 at the right end, so the default
    tolerance is zero.
    """
    x = _open_interval(points)
    first, second, third = abc_factors(x)
    gap = -(first * second * third)
    direct = 1.0 - abc_expression(x)
    sign_errors = int((first <= 0).sum() + (second >= 0).sum() + (third <= 0).sum())
    return ScanResult("abc_below_one", points, float(gap.min()), int((gap <= tol).sum()) + sign_errors,
                      {"sign_errors": sign_errors,
                       "factorization_error": float(np.max(np.abs(gap - direct)))})


def scan_G_concavity(pairs: int = 100, seed: int = 0, points: int = 200,
                     tol: float = 1e-8) -> ScanResult:
    """Finite-difference G'' on interior grids of random non-overlapping ball pairs."""
    rng = make_rng(seed, 13)
    worst, violations, disagreement = -math.inf, 0, 0.0
    for _ in range(pairs):
        pair = BallPair(float(rng.uniform(2.0, 6.0)), float(rng.uniform(0.0, 2.0 - 4.0 * FD_EDGE)))
        table = AngleFunctionTable.build(pair, points)
        worst = max(worst, float(table.G2_fd.max()))
        violations += int((table.G2_fd >= -tol).sum())
        rel = np.abs(table.G2_fd - table.G2) / np.maximum(1.0, np.abs(table.G2))
        disagreement = max(disagreement, float(rel.max()))
    return ScanResult("G_concavity", pairs * points, worst, violations,
                      {"closed_form_disagreement": disagreement})


@dataclass(frozen=True)
class SpecialFunctionsReport:
    scans: tuple[ScanResult, ...]
    spot_values: dict[str, float]

    @property
    def holds(self) -> bool:
        return all(s.holds for s in self.scans)

    def to_dict(self) -> dict:
        return {"holds": self.holds, "spot_values": self.spot_values,
                "scans": [s.to_dict() for s in self.scans]}


def special_functions(grid: int = 200, points: int = 10_000, pairs: int = 100,
                      seed: int = 0) -> SpecialFunctionsReport:
    spot = {
        "g(0)": float(g(0.0)),
        "g(pi)": float(g(math.pi)),
        "f(pi/4)": float(f(math.pi / 4)),
        "f(pi/2)": float(f(math.pi / 2)),
        "G(0; d=4, b=0)": float(BallPair(4.0, 0.0).G(0.0)),
    }
    scans = (
        scan_g_superadditivity(grid),
        scan_f_above_one(points),
        scan_abc_below_one(points),
        scan_G_concavity(pairs, seed),
    )
    return SpecialFunctionsReport(scans, spot)
