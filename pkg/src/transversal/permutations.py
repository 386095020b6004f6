"""Geometric permutation enumeration by a sweep of the direction sphere."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from joblib import Parallel, delayed

from geometry.core import Configuration, GeometricPermutation, OrderedOrder, canonicalize
from geometry.errors import InvalidInput
from geometry.sampling import jittered_directions
from geometry.tolerances import GEOM_TOL, MIN_RESOLUTION
from transversal.solver import TransversalWitness, depth_batch_arrays, find_transversal

logger = logging.getLogger(__name__)

CHUNK = 20_000


@dataclass(frozen=True)
class Certificate:
    gp: GeometricPermutation
    witness: TransversalWitness
    sweep_depth: float

    def to_dict(self) -> dict:
        return {"gp": str(self.gp), "sweep_depth": self.sweep_depth, **self.witness.to_dict()}


@dataclass
class SweepResult:
    gps: set[GeometricPermutation]
    certificates: list[Certificate]
    rejected: list[str] = field(default_factory=list)
    positive_directions: int = 0
    resolution: int = 0


def _sweep_chunk(centers: np.ndarray, radius: float, resolution: int, seed: int,
                 start: int, stop: int) -> tuple[int, dict]:
    dirs = jittered_directions(resolution, seed, start, stop)
    depths, _ = depth_batch_arrays(centers, radius, dirs)
    found: dict[tuple[int, ...], tuple[float, np.ndarray]] = {}
    positive = depths > 0
    for v, dpt in zip(dirs[positive], depths[positive]):
        proj = centers @ v
        order = np.argsort(proj, kind="stable")
        if len(order) > 1 and np.min(np.diff(proj[order])) < GEOM_TOL:
            continue
        key = tuple(int(i) for i in order)
        rev = key[::-1]
        canonical, rep = (key, v) if key <= rev else (rev, -v)
        if canonical not in found or dpt > found[canonical][0]:
            found[canonical] = (float(dpt), rep)
    return int(positive.sum()), found


def _label_key(cfg: Configuration, key: tuple[int, ...]) -> tuple[str, ...]:
    return tuple(cfg.labels[i] for i in key)


def sweep_geometric_permutations(cfg: Configuration, resolution: int = 100_000, seed: int = 0,
                                 threads: int = 1, budget: int = 2000) -> SweepResult:
    if resolution < MIN_RESOLUTION:
        raise InvalidInput(f"resolution must be at least {MIN_RESOLUTION}, got {resolution}")
    radius = cfg.common_radius()
    centers = cfg.centers
    bounds = [(s, min(s + CHUNK, resolution)) for s in range(0, resolution, CHUNK)]
    chunks = Parallel(n_jobs=threads)(
        delayed(_sweep_chunk)(centers, radius, resolution, seed, s, e) for s, e in bounds
    )

    candidates: dict[tuple[str, ...], tuple[float, np.ndarray]] = {}
    positive = 0
    for count, found in chunks:
        positive += count
        for key, (dpt, v) in found.items():
            labels = _label_key(cfg, key)
            # compare label tuples: index order and label order can differ
            order = OrderedOrder(labels)
            gp = canonicalize(order)
            if gp.canonical != order:
                labels, v = gp.canonical.labels, -v
            if labels not in candidates or dpt > candidates[labels][0]:
                candidates[labels] = (dpt, v)
    logger.info("Sweep of %d directions: %d positive, %d candidate permutations",
                resolution, positive, len(candidates))

    result = SweepResult(set(), [], positive_directions=positive, resolution=resolution)
    for labels in sorted(candidates):
        dpt, v = candidates[labels]
        order = OrderedOrder(labels)
        witness = find_transversal(cfg, order, budget=budget, seed=seed, starts=[v])
        if isinstance(witness, TransversalWitness):
            gp = canonicalize(order)
            result.gps.add(gp)
            result.certificates.append(Certificate(gp, witness, dpt))
        else:
            logger.warning("Candidate %s from the sweep could not be certified", order)
            result.rejected.append(str(order))
    return result


def enumerate_geometric_permutations(cfg: Configuration, resolution: int = 100_000, seed: int = 0,
                                     threads: int = 1) -> set[GeometricPermutation]:
    return sweep_geometric_permutations(cfg, resolution, seed, threads).gps
