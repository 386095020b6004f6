"""Search states and merit functions for the two counter-example formulations.

Both merits are the largest constraint residual, so zero means every
constraint holds. The batch forms take one state per row.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from geometry.core import Configuration, Line
from geometry.errors import DegenerateParameter, InvalidInput
from geometry.tolerances import DENOM_GUARD

PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
FIRST = (0, 1, 2, 3)
SECOND = (0, 2, 3, 1)


@dataclass(frozen=True)
class TangencySearchState:
    """a at the origin, b = (xb, 0, 0), c = (xc, yc, 0), d = (xd, yd, zd).

    Each line is (p1, p2, q, r): through (0, p1, p2) with direction (1, q, r).
    """

    centers: tuple[float, float, float, float, float, float]
    line1: tuple[float, float, float, float]
    line2: tuple[float, float, float, float]

    DIM = 14

    def __post_init__(self):
        for name, size in (("centers", 6), ("line1", 4), ("line2", 4)):
            values = tuple(float(v) for v in getattr(self, name))
            if len(values) != size or not all(math.isfinite(v) for v in values):
                raise InvalidInput(f"{name} needs {size} finite values")
            object.__setattr__(self, name, values)

    @classmethod
    def from_array(cls, x) -> TangencySearchState:
        x = np.asarray(x, dtype=float)
        return cls(tuple(x[:6]), tuple(x[6:10]), tuple(x[10:14]))

    def as_array(self) -> np.ndarray:
        return np.array(self.centers + self.line1 + self.line2)

    def center_matrix(self) -> np.ndarray:
        return _centers(self.as_array()[None, :])[0]

    def configuration(self) -> Configuration:
        return Configuration.from_centers(self.center_matrix(), labels="ABCD")

    def lines(self) -> tuple[Line, Line]:
        out = []
        for p1, p2, q, r in (self.line1, self.line2):
            out.append(Line.through((0.0, p1, p2), (1.0, q, r)))
        return out[0], out[1]

    def to_dict(self) -> dict:
        return {"centers": list(self.centers), "line1": list(self.line1), "line2": list(self.line2)}


@dataclass(frozen=True)
class PinningSearchState:
    h: float
    t: tuple[float, float, float, float]
    hp: float
    tp: tuple[float, float, float, float]
    u: float | None = None

    DIM = 10

    def __post_init__(self):
        t = tuple(float(v) for v in self.t)
        tp = tuple(float(v) for v in self.tp)
        if len(t) != 4 or len(tp) != 4:
            raise InvalidInput("Each configuration needs four t values")
        for v in t + tp:
            if abs(1.0 - v * v) < DENOM_GUARD:
                raise DegenerateParameter(f"t = {v} sits on a pole of the parametrization")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "tp", tp)
        object.__setattr__(self, "h", float(self.h))
        object.__setattr__(self, "hp", float(self.hp))
        if self.u is None:
            product = self.h * self.hp
            object.__setattr__(self, "u", 1.0 / product if product != 0.0 else 0.0)

    @classmethod
    def from_array(cls, x, u: float | None = None) -> PinningSearchState:
        x = np.asarray(x, dtype=float)
        return cls(float(x[0]), tuple(x[1:5]), float(x[5]), tuple(x[6:10]), u)

    def as_array(self) -> np.ndarray:
        return np.array((self.h, *self.t, self.hp, *self.tp))

    def as_variables(self) -> np.ndarray:
        """Values in the order u, h, ta..td, hp, tap..tdp."""
        return np.array((self.u, self.h, *self.t, self.hp, *self.tp))

    def to_dict(self) -> dict:
        return {"u": self.u, "h": self.h, "t": list(self.t), "hp": self.hp, "tp": list(self.tp)}


def _centers(x: np.ndarray) -> np.ndarray:
    m = len(x)
    c = np.zeros((m, 4, 3))
    c[:, 1, 0] = x[:, 0]
    c[:, 2, 0], c[:, 2, 1] = x[:, 1], x[:, 2]
    c[:, 3] = x[:, 3:6]
    return c


def _pair_sq(c: np.ndarray) -> np.ndarray:
    i, j = np.array(PAIRS).T
    diff = c[:, i] - c[:, j]
    return np.sum(diff * diff, axis=-1)


def _line_residuals(c: np.ndarray, line: np.ndarray, order) -> np.ndarray:
    m = len(c)
    point = np.column_stack([np.zeros(m), line[:, 0], line[:, 1]])
    v = np.column_stack([np.ones(m), line[:, 2], line[:, 3]])
    w = c - point[:, None, :]
    along = np.einsum("mkj,mj->mk", w, v)
    dist_sq = np.sum(w * w, axis=-1) - along ** 2 / np.sum(v * v, axis=1)[:, None]
    touch = np.max(np.maximum(0.0, dist_sq - 1.0), axis=1)
    steps = c[:, list(order[1:])] - c[:, list(order[:-1])]
    ordered = np.max(np.maximum(0.0, -np.einsum("mkj,mj->mk", steps, v)), axis=1)
    return np.maximum(touch, ordered)


def merit_tangency_batch(x: np.ndarray) -> np.ndarray:
    x = np.atleast_2d(np.asarray(x, dtype=float))
    c = _centers(x)
    apart = np.max(np.maximum(0.0, 4.0 - _pair_sq(c)), axis=1)
    first = _line_residuals(c, x[:, 6:10], FIRST)
    second = _line_residuals(c, x[:, 10:14], SECOND)
    return np.maximum(apart, np.maximum(first, second))


def merit_tangency(state: TangencySearchState) -> float:
    """0 iff the balls are disjoint and line1, line2 meet them in orders ABCD, ACDB."""
    return float(merit_tangency_batch(state.as_array()[None, :])[0])


def hyperboloidal_centers_batch(h: np.ndarray, t: np.ndarray) -> np.ndarray:
    plus = 1.0 + t * t
    minus = 1.0 - t * t
    return np.stack([2.0 * h[:, None] * t / minus, minus / plus, 2.0 * t / plus], axis=-1)


def pinning_residuals_batch(x: np.ndarray) -> dict[str, np.ndarray]:
    """Per-constraint residuals on the geometric scale (squared distances, t differences)."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    first = _pair_sq(hyperboloidal_centers_batch(x[:, 0], x[:, 1:5]))
    second = _pair_sq(hyperboloidal_centers_batch(x[:, 5], x[:, 6:10]))
    t, tp = x[:, 1:5], x[:, 6:10]
    order1 = np.max(np.maximum(0.0, t[:, list(FIRST[:-1])] - t[:, list(FIRST[1:])]), axis=1)
    order2 = np.max(np.maximum(0.0, tp[:, list(SECOND[:-1])] - tp[:, list(SECOND[1:])]), axis=1)
    return {
        "distance": np.max(np.abs(first - second), axis=1),
        "apart": np.max(np.maximum(0.0, 4.0 - first), axis=1),
        "order": np.maximum(order1, order2),
    }


def merit_pinning_batch(x: np.ndarray) -> np.ndarray:
    """Saturation is taken as satisfied (u = 1 / (h hp)); rows on a t pole give inf."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    ts = np.concatenate([x[:, 1:5], x[:, 6:10]], axis=1)
    bad = np.any(np.abs(1.0 - ts * ts) < DENOM_GUARD, axis=1) | (x[:, 0] * x[:, 5] == 0.0)
    safe = np.where(bad[:, None], 0.0, x)
    res = pinning_residuals_batch(safe)
    merit = np.maximum(res["distance"], np.maximum(res["apart"], res["order"]))
    return np.where(bad, np.inf, merit)


def merit_pinning(state: PinningSearchState) -> float:
    """0 iff the two hyperboloidal configurations are congruent, disjoint and correctly ordered."""
    base = float(merit_pinning_batch(state.as_array()[None, :])[0])
    saturation = abs(state.u * state.h * state.hp - 1.0)
    return max(base, saturation)
