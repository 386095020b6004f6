"""Four unit balls tangent to the x-axis with ridges on one quadric ruling.

With parameters h and t_w the center of ball w is

    (2 h t / (1 - t^2), (1 - t^2) / (1 + t^2), 2 t / (1 + t^2)),

which lies on xy = hz at distance one from the x-axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from geometry.core import X_AXIS, Configuration, Line, dist_point_line
from geometry.errors import DegenerateParameter, InvalidInput
from geometry.tolerances import DENOM_GUARD, GEOM_TOL
from transversal.solver import perp_basis


@dataclass(frozen=True)
class HyperboloidalParams:
    h: float
    t: tuple[float, float, float, float]

    def __post_init__(self):
        t = tuple(float(x) for x in self.t)
        if len(t) != 4:
            raise InvalidInput(f"Expected four t values, got {len(t)}")
        if not all(math.isfinite(x) for x in (*t, self.h)):
            raise InvalidInput("Hyperboloidal parameters must be finite")
        if abs(self.h) < DENOM_GUARD:
            raise DegenerateParameter("h must be nonzero")
        for x in t:
            if abs(1.0 - x * x) < DENOM_GUARD:
                raise DegenerateParameter(f"t = {x} sits on a pole of the parametrization")
        if len(set(t)) != 4:
            raise InvalidInput(f"t values must be pairwise distinct: {t}")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "h", float(self.h))


def hyperboloidal_centers(h: float, t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(1.0 - t * t) < DENOM_GUARD):
        raise DegenerateParameter("|t| = 1 is a pole of the parametrization")
    plus = 1.0 + t * t
    minus = 1.0 - t * t
    return np.stack([2.0 * h * t / minus, minus / plus, 2.0 * t / plus], axis=-1)


@dataclass(frozen=True)
class HyperboloidalConfiguration:
    configuration: Configuration
    line: Line
    tangent: tuple[bool, ...]
    non_overlapping: bool

    def to_dict(self) -> dict:
        return {**self.configuration.to_dict(), "line": self.line.to_dict(),
                "tangent": list(self.tangent), "non_overlapping": self.non_overlapping}


def make_hyperboloidal(params: HyperboloidalParams, labels: Sequence[str] = "ABCD") -> HyperboloidalConfiguration:
    centers = hyperboloidal_centers(params.h, params.t)
    cfg = Configuration.from_centers(centers, labels=tuple(labels), allow_overlap=True)
    tangent = tuple(abs(dist_point_line(c, X_AXIS) - 1.0) <= GEOM_TOL for c in centers)
    return HyperboloidalConfiguration(cfg, X_AXIS, tangent, cfg.is_non_overlapping())


def _frame_fit(x: np.ndarray, psi: np.ndarray, alpha: float) -> tuple[float, float, float]:
    """Least squares (shift, h) for a frame rotated by alpha; returns (residual, shift, h)."""
    phi = psi - alpha
    # x cos(phi) - s cos(phi) - h sin(phi) = 0
    a = np.column_stack([np.cos(phi), np.sin(phi)])
    b = x * np.cos(phi)
    sol, *_ = np.linalg.lstsq(a, b, rcond=None)
    res = float(np.linalg.norm(a @ sol - b))
    return res, float(sol[0]), float(sol[1])


def hyperboloidal_params_from(cfg: Configuration, line: Line, tol: float = 1e-7) -> HyperboloidalParams:
    """Recover (h, t) for four unit balls tangent to `line` in hyperboloidal position.

    The model frame differs from the line's own frame by a shift along the
    line and a rotation about it; both are fitted.
    """
    if len(cfg) != 4:
        raise InvalidInput("Hyperboloidal parameters need exactly four balls")
    e1, e2 = perp_basis(line.d)
    offsets = cfg.centers - line.p
    x = offsets @ line.d
    y, z = offsets @ e1, offsets @ e2
    if np.any(np.abs(np.hypot(y, z) - 1.0) > 1e-6):
        raise InvalidInput("Balls are not tangent to the line")
    psi = np.arctan2(z, y)

    grid = np.linspace(0.0, math.pi, 1801)
    scores = [_frame_fit(x, psi, a)[0] for a in grid]
    k = int(np.argmin(scores))
    lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)]
    best = minimize_scalar(lambda a: _frame_fit(x, psi, a)[0], bounds=(lo, hi), method="bounded",
                           options={"xatol": 1e-14})
    alpha = float(best.x)
    res, shift, h = _frame_fit(x, psi, alpha)
    if res > tol:
        raise InvalidInput(f"Ridges are not hyperboloidal (fit residual {res:.3e})")

    candidates = []
    for turn in (0.0, math.pi):
        phi = np.angle(np.exp(1j * (psi - alpha - turn)))
        t = np.tan(phi / 2.0)
        candidates.append((float(np.max(np.abs(t))), tuple(float(v) for v in t)))
    _, t = min(candidates)
    return HyperboloidalParams(h, t)
