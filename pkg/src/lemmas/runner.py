"""Batch verification driver: per-trial margins for one lemma as a DataFrame."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from geometry.core import Configuration, Line, OrderedOrder, default_labels, order_along
from geometry.errors import InvalidInput, NotATransversal, TieError
from geometry.sampling import jittered_directions, make_rng, random_configuration, random_stabbed_configuration
from lemmas.angle import check_angle_lemma
from lemmas.distance import check_distance_lemma
from lemmas.functions import special_functions
from lemmas.graph import build_incompatibility_graph
from lemmas.packing import pack_cylinder, pack_two_cylinders
from lemmas.planar import Disk, Line2, interior_transversal_2d, planar_order
from lemmas.summary import margin_summary
from lemmas.triangle import check_triangle_lemmas
from transversal.solver import depth_batch, find_transversal

logger = logging.getLogger(__name__)

LEMMAS = ("distance", "angle", "cylinder", "cylinder6", "triangle", "functions", "graph", "2d")
SAMPLERS = ("box", "stabbed")
CHUNK = 1000
PACKING_STARTS = 8
EXPECTED_EXCLUDED = {"ADCB", "BADC", "BDAC", "CBAD"}
SAMPLE_BOX = 12.0
SCREEN_DIRECTIONS = 256
SCREEN_DEPTH = -0.25


@dataclass(frozen=True)
class VerificationRun:
    lemma: str
    trials: int
    seed: int
    frame: pd.DataFrame

    @property
    def violations(self) -> int:
        return int((~self.frame["holds"].astype(bool)).sum())

    def summary(self) -> dict:
        return {
            "lemma": self.lemma,
            "trials": self.trials,
            "seed": self.seed,
            "violations": self.violations,
            "margins": margin_summary(self.frame["margin"].to_numpy(dtype=float)),
        }


def random_transversal_configuration(n: int, rng: np.random.Generator, box: float = SAMPLE_BOX,
                                     max_tries: int = 10_000) -> tuple[Configuration, Line]:
    """Unit balls sampled in a box, relabeled so a certified line meets them in label order.

    A candidate is screened by its deepest direction among a seeded set;
    the order along that direction becomes the label order, and the
    candidate is kept only when find_transversal certifies it.
    """
    target = OrderedOrder(default_labels(n))
    for attempt in range(max_tries):
        cfg = random_configuration(n, rng, box=box)
        dirs = jittered_directions(SCREEN_DIRECTIONS, seed=int(rng.integers(2**31)))
        depths = depth_batch(cfg, dirs)
        best = int(np.argmax(depths))
        if depths[best] < SCREEN_DEPTH:
            continue
        try:
            found = order_along(cfg, dirs[best])
        except TieError:
            continue
        index = {lab: i for i, lab in enumerate(cfg.labels)}
        relabeled = Configuration.from_centers(cfg.centers[[index[lab] for lab in found.labels]])
        witness = find_transversal(relabeled, target, budget=64, seed=attempt, starts=[dirs[best]], polish=2)
        if witness:
            return relabeled, witness.line
    raise InvalidInput(f"Could not sample {n} balls with a transversal in a box of side {box}")


def sample_instance(n: int, rng: np.random.Generator, sampler: str) -> tuple[Configuration, Line]:
    if sampler == "stabbed":
        return random_stabbed_configuration(n, rng)
    return random_transversal_configuration(n, rng)


def _distance_trial(rng: np.random.Generator, sampler: str) -> dict:
    cfg, line = sample_instance(4, rng, sampler)
    check = check_distance_lemma(cfg, line)
    return {"margin": check.margin, "holds": check.holds}


def _angle_trial(rng: np.random.Generator, sampler: str) -> dict:
    cfg, line = sample_instance(3, rng, sampler)
    check = check_angle_lemma(*cfg.balls, line)
    return {"margin": check.margin, "holds": check.holds, "angle": check.angle}


def _cylinder_trial(rng: np.random.Generator, k: int) -> dict:
    s = 1 + k % 2
    length = float(rng.uniform(0.25, s * math.sqrt(2.0) - 1e-3))
    report = pack_cylinder(length, 2 * s + 1, budget=PACKING_STARTS, seed=int(rng.integers(2**31)))
    margin = 2.0 - report.min_pairwise_distance
    return {"margin": margin, "holds": margin > 0, "length": length, "count": 2 * s + 1}


def _cylinder6_trial(rng: np.random.Generator) -> dict:
    theta = float(math.pi / 4 + (math.pi / 4) * (1.0 - rng.uniform(0.0, 1.0)))
    offset = float(rng.uniform(0.0, 1.5))
    report = pack_two_cylinders(theta, offset, 7, budget=PACKING_STARTS, seed=int(rng.integers(2**31)))
    margin = 2.0 - report.min_pairwise_distance
    return {"margin": margin, "holds": margin > 0, "theta": theta, "offset": offset}


def _triangle_trial(rng: np.random.Generator, k: int, sampler: str) -> dict:
    cfg, line = sample_instance(3, rng, sampler)
    other = find_transversal(cfg, OrderedOrder(("A", "C", "B")), budget=300, seed=k, polish=2)
    witness_xzy = other.line if other else None
    report = check_triangle_lemmas(*cfg.balls, witness_xyz=line, witness_xzy=witness_xzy)
    margin = min(math.pi / 2 - report.angles[lab] for lab in report.constrained)
    if report.yz_margin is not None:
        margin = min(margin, report.yz_margin)
    return {"margin": margin, "holds": report.holds, "both_orders": witness_xzy is not None}


def random_planar_instance(rng: np.random.Generator, n: int = 4) -> tuple[list[Disk], Line2, Line2]:
    """Unit disks along the x-axis with two distinct transversals in left-to-right order."""
    for _ in range(1000):
        xs = np.cumsum(rng.uniform(2.05, 3.0, n))
        ys = rng.uniform(-0.6, 0.6, n)
        disks = [Disk((float(x), float(y)), 1.0) for x, y in zip(xs, ys)]
        l1 = Line2.through((0.0, float(rng.uniform(-0.35, 0.35))), (1.0, 0.0))
        tilt = float(rng.uniform(-0.05, 0.05))
        l2 = Line2.through((float(xs.mean()), float(rng.uniform(-0.35, 0.35))), (1.0, tilt))
        try:
            planar_order(disks, l1)
            planar_order(disks, l2)
        except NotATransversal:
            continue
        return disks, l1, l2
    raise InvalidInput("Could not sample a planar instance")


def _planar_trial(rng: np.random.Generator) -> dict:
    disks, l1, l2 = random_planar_instance(rng)
    result = interior_transversal_2d(disks, l1, l2)
    return {"margin": result.clearance, "holds": result.clearance > 0}


def _trial(lemma: str, seed: int, k: int, sampler: str) -> dict:
    rng = make_rng(seed, 21, k)
    if lemma == "distance":
        row = _distance_trial(rng, sampler)
    elif lemma == "angle":
        row = _angle_trial(rng, sampler)
    elif lemma == "cylinder":
        row = _cylinder_trial(rng, k)
    elif lemma == "cylinder6":
        row = _cylinder6_trial(rng)
    elif lemma == "triangle":
        row = _triangle_trial(rng, k, sampler)
    else:
        row = _planar_trial(rng)
    return {"trial": k, **row}


def _chunk(lemma: str, seed: int, start: int, stop: int, sampler: str) -> list[dict]:
    return [_trial(lemma, seed, k, sampler) for k in range(start, stop)]


def _one_shot_rows(lemma: str, seed: int) -> list[dict]:
    if lemma == "graph":
        graph = build_incompatibility_graph()
        excluded = {str(v) for v in graph.excluded}
        holds = graph.independence_number == 2 and excluded == EXPECTED_EXCLUDED
        return [{"trial": 0, "margin": float("nan"), "holds": holds,
                 "independence_number": graph.independence_number, "edges": len(graph.edges_among(graph.compatible))}]
    report = special_functions(seed=seed)
    rows = []
    for scan in report.scans:
        margin = -scan.worst if scan.name in ("g_superadditivity", "G_concavity") else scan.worst
        rows.append({"trial": scan.name, "margin": margin, "holds": scan.holds, "points": scan.points})
    return rows


def run_verification(lemma: str, trials: int = 1000, seed: int = 0, threads: int = 1,
                     sampler: str = "box") -> VerificationRun:
    """Trials are seeded by (seed, trial index), so the worker count never changes the rows."""
    if lemma not in LEMMAS:
        raise InvalidInput(f"Unknown lemma {lemma!r}; expected one of {', '.join(LEMMAS)}")
    if sampler not in SAMPLERS:
        raise InvalidInput(f"Unknown sampler {sampler!r}; expected one of {', '.join(SAMPLERS)}")
    if trials < 1:
        raise InvalidInput("trials must be positive")
    if lemma in ("graph", "functions"):
        rows = _one_shot_rows(lemma, seed)
    else:
        bounds = [(s, min(s + CHUNK, trials)) for s in range(0, trials, CHUNK)]
        chunks = Parallel(n_jobs=threads)(delayed(_chunk)(lemma, seed, a, b, sampler) for a, b in bounds)
        rows = [row for chunk in chunks for row in chunk]
    frame = pd.DataFrame(rows)
    run = VerificationRun(lemma, len(rows), seed, frame)
    logger.info("Verified %s over %d trials: %d violations", lemma, len(rows), run.violations)
    return run
