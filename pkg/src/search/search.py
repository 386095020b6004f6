"""Seeded multistart searches for counter-examples.

Samples come in fixed chunks keyed by (seed, chunk index), so a larger
budget only ever adds samples. A sample is refined by compass descent when
its raw merit falls below a threshold taken from a separate calibration
draw; whether and how a sample is refined depends on that sample alone,
which keeps the best merit nonincreasing in the budget and independent of
the worker count.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np
from joblib import Parallel, delayed

import settings
from geometry.errors import InvalidInput
from geometry.sampling import make_rng
from search.merit import (
    PinningSearchState,
    TangencySearchState,
    merit_pinning,
    merit_pinning_batch,
    merit_tangency,
    merit_tangency_batch,
)

logger = logging.getLogger(__name__)

CHUNK_SIZE = 1024
CALIBRATION_SIZE = 1024
CALIBRATION_CHUNK = 2 ** 20
DESCENT_QUANTILE = 0.01
DESCENT_ITERATIONS = 120
MIN_STEP = 1e-10

TANGENCY = "tangency"
PINNING = "pinning"
_STREAMS = {TANGENCY: 31, PINNING: 32}


@dataclass(frozen=True)
class SearchReport:
    formulation: str
    best_state: dict
    best_violation: float
    samples_evaluated: int
    descended: int
    seed: int
    wall_time: float

    def to_dict(self) -> dict:
        return {
            "formulation": self.formulation,
            "best_state": self.best_state,
            "best_violation": self.best_violation,
            "samples_evaluated": self.samples_evaluated,
            "descended": self.descended,
            "seed": self.seed,
            "wall_time": self.wall_time,
        }


@dataclass(frozen=True)
class SearchSpace:
    name: str
    dim: int
    sample: Callable[[np.random.Generator, int], np.ndarray]
    merit: Callable[[np.ndarray], np.ndarray]
    step: float


def compass_descent(merit: Callable[[np.ndarray], np.ndarray], x0: np.ndarray, step: float,
                    iterations: int = DESCENT_ITERATIONS, min_step: float = MIN_STEP
                    ) -> tuple[np.ndarray, np.ndarray]:
    """Row-wise coordinate pattern search; a row only moves when its merit drops."""
    x = np.array(x0, dtype=float, copy=True)
    f = merit(x)
    steps = np.full(len(x), float(step))
    dim = x.shape[1]
    moves = np.vstack([np.eye(dim), -np.eye(dim)])
    for _ in range(iterations):
        active = np.flatnonzero((steps > min_step) & np.isfinite(f) & (f > 0.0))
        if active.size == 0:
            break
        cand = x[active, None, :] + steps[active, None, None] * moves[None, :, :]
        fc = merit(cand.reshape(-1, dim)).reshape(len(active), 2 * dim)
        k = np.argmin(fc, axis=1)
        best = fc[np.arange(len(active)), k]
        improved = best < f[active]
        moved = active[improved]
        x[moved] = cand[improved, k[improved]]
        f[moved] = best[improved]
        steps[active[~improved]] *= 0.5
    return x, f


def _tangency_space(box: float) -> SearchSpace:
    def sample(rng, count):
        return rng.uniform(-box, box, size=(count, TangencySearchState.DIM))

    def merit(x):
        out = merit_tangency_batch(x)
        return np.where(np.all(np.abs(x) <= box, axis=1), out, np.inf)

    return SearchSpace(TANGENCY, TangencySearchState.DIM, sample, merit, step=box / 8)


def _pinning_space(box: float, h_min: float, h_max: float, t_guard: float) -> SearchSpace:
    def sample(rng, count):
        h = rng.uniform(h_min, h_max, size=(count, 2)) * rng.choice([-1.0, 1.0], size=(count, 2))
        t = rng.uniform(-box, box, size=(count, 8))
        near_pole = np.abs(np.abs(t) - 1.0) < t_guard
        t = np.where(near_pole, np.sign(t) * (1.0 + 2.0 * t_guard), t)
        return np.column_stack([h[:, 0], t[:, :4], h[:, 1], t[:, 4:]])

    def merit(x):
        h = np.abs(x[:, [0, 5]])
        t = np.abs(x[:, [1, 2, 3, 4, 6, 7, 8, 9]])
        inside = (np.all((h >= h_min) & (h <= h_max), axis=1) & np.all(t <= box, axis=1)
                  & np.all(np.abs(t - 1.0) >= t_guard, axis=1))
        out = np.full(len(x), np.inf)
        if inside.any():
            out[inside] = merit_pinning_batch(x[inside])
        return out

    return SearchSpace(PINNING, PinningSearchState.DIM, sample, merit, step=1.0)


def _threshold(space: SearchSpace, seed: int, stream: int) -> float:
    calibration = space.merit(space.sample(make_rng(seed, stream, CALIBRATION_CHUNK), CALIBRATION_SIZE))
    finite = calibration[np.isfinite(calibration)]
    return float(np.quantile(finite, DESCENT_QUANTILE)) if finite.size else np.inf


def _search_chunk(space: SearchSpace, seed: int, stream: int, chunk: int, count: int,
                  threshold: float) -> tuple[np.ndarray, float, int]:
    x = space.sample(make_rng(seed, stream, chunk), CHUNK_SIZE)[:count]
    f = space.merit(x)
    pick = np.flatnonzero(f <= threshold)
    if pick.size:
        x[pick], f[pick] = compass_descent(space.merit, x[pick], space.step)
    i = int(np.argmin(f))
    return x[i], float(f[i]), int(pick.size)


def _run(space: SearchSpace, budget: int, seed: int, threads: int) -> tuple[np.ndarray, float, int]:
    if budget < 1:
        raise InvalidInput("budget must be at least 1")
    stream = _STREAMS[space.name]
    threshold = _threshold(space, seed, stream)
    sizes = [min(CHUNK_SIZE, budget - start) for start in range(0, budget, CHUNK_SIZE)]
    results = Parallel(n_jobs=threads)(
        delayed(_search_chunk)(space, seed, stream, k, n, threshold) for k, n in enumerate(sizes))
    best_x, best_f, descended = None, np.inf, 0
    for k, (x, f, n) in enumerate(results):
        descended += n
        if best_x is None or f < best_f:
            best_x, best_f = x, f
        if (k + 1) % 100 == 0:
            logger.info("%s search: %d/%d chunks, best merit %.6e", space.name, k + 1, len(sizes), best_f)
    return best_x, best_f, descended


def search_tangency(budget: int, seed: int = 0, threads: int = 1, box: float | None = None) -> SearchReport:
    started = time.perf_counter()
    space = _tangency_space(settings.SEARCH_BOX if box is None else box)
    x, _, descended = _run(space, budget, seed, threads)
    state = TangencySearchState.from_array(x)
    violation = merit_tangency(state)
    logger.info("Tangency search (budget %d, seed %d): best merit %.6e", budget, seed, violation)
    return SearchReport(TANGENCY, state.to_dict(), violation, budget, descended, seed,
                        time.perf_counter() - started)


def search_pinning(budget: int, seed: int = 0, threads: int = 1, box: float | None = None,
                   h_min: float | None = None, h_max: float | None = None,
                   t_guard: float | None = None) -> SearchReport:
    started = time.perf_counter()
    space = _pinning_space(settings.SEARCH_BOX if box is None else box,
                           settings.H_MIN if h_min is None else h_min,
                           settings.H_MAX if h_max is None else h_max,
                           settings.T_GUARD if t_guard is None else t_guard)
    x, _, descended = _run(space, budget, seed, threads)
    state = PinningSearchState.from_array(x)
    violation = merit_pinning(state)
    logger.info("Pinning search (budget %d, seed %d): best merit %.6e", budget, seed, violation)
    return SearchReport(PINNING, state.to_dict(), violation, budget, descended, seed,
                        time.perf_counter() - started)
