"""Seeded randomness and direction sampling.

Every random stream is a Philox generator keyed by (seed, *keys) so a chunk
of work draws the same numbers no matter which worker runs it.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.spatial.transform import Rotation

from geometry.core import Configuration, Line
from geometry.errors import InvalidInput

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


def make_rng(seed: int, *keys: int) -> np.random.Generator:
    state = np.random.SeedSequence([int(seed) & 0xFFFFFFFF, *[int(k) for k in keys]])
    return np.random.Generator(np.random.Philox(key=state.generate_state(2, np.uint64)))


def fibonacci_sphere(n: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Points start..stop-1 of the n-point Fibonacci lattice on S^2."""
    stop = n if stop is None else stop
    i = np.arange(start, stop, dtype=float)
    offset = 2.0 / n
    y = i * offset - 1.0 + offset / 2.0
    r = np.sqrt(np.clip(1.0 - y * y, 0.0, None))
    phi = i * GOLDEN_ANGLE
    return np.column_stack([np.cos(phi) * r, y, np.sin(phi) * r])


def jittered_directions(n: int, seed: int, start: int = 0, stop: int | None = None,
                        jitter: float | None = None) -> np.ndarray:
    """Seeded rotation of the Fibonacci lattice plus per-point jitter."""
    stop = n if stop is None else stop
    rotation = Rotation.random(random_state=make_rng(seed, 0)).as_matrix()
    pts = fibonacci_sphere(n, start, stop) @ rotation.T
    if jitter is None:
        jitter = 0.25 * math.sqrt(4.0 * math.pi / n)
    if jitter > 0:
        pts = pts + jitter * make_rng(seed, 1, start).normal(size=pts.shape)
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def unit_vectors(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    v = rng.normal(size=(count, dim))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def random_rigid_motion(rng: np.random.Generator, spread: float = 10.0) -> tuple[np.ndarray, np.ndarray]:
    return Rotation.random(random_state=rng).as_matrix(), rng.uniform(-spread, spread, size=3)


def random_configuration(n: int, rng: np.random.Generator, box: float = 12.0,
                         max_tries: int = 100_000) -> Configuration:
    """Non-overlapping unit balls, centers uniform in a cube of side `box`."""
    centers: list[np.ndarray] = []
    tries = 0
    while len(centers) < n:
        tries += 1
        if tries > max_tries:
            raise InvalidInput(f"Could not place {n} unit balls in a box of side {box}")
        c = rng.uniform(-box / 2, box / 2, size=3)
        if all(np.linalg.norm(c - o) >= 2.0 for o in centers):
            centers.append(c)
    return Configuration.from_centers(centers)


def random_stabbed_configuration(n: int, rng: np.random.Generator,
                                 max_tries: int = 10_000) -> tuple[Configuration, Line]:
    """Unit balls met by a random line in label order; returns the line too."""
    rotation, translation = random_rigid_motion(rng, spread=3.0)
    for _ in range(max_tries):
        s = 0.0
        centers = []
        for _ in range(n):
            s += rng.uniform(0.2, 2.6)
            rho = math.sqrt(rng.uniform(0.0, 1.0)) * 0.999
            phi = rng.uniform(0.0, 2 * math.pi)
            centers.append((s, rho * math.cos(phi), rho * math.sin(phi)))
        centers = np.array(centers)
        dists = np.linalg.norm(centers[:, None, :] - centers[None, :, :], axis=-1)
        if np.all(dists[np.triu_indices(n, 1)] >= 2.0):
            cfg = Configuration.from_centers(centers @ rotation.T + translation)
            line = Line.through(translation, rotation @ np.array([1.0, 0.0, 0.0]))
            return cfg, line
    raise InvalidInput(f"Could not sample a stabbed configuration of {n} balls")
