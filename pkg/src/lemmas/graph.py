"""Incompatibility graph on the geometric permutations of four balls.

A geometric permutation XYZW forces |xw| > |xy|, |yz|, |zw| by the
distance lemma. Every relation of one permutation shares the same larger
pair, so two permutations contradict each other exactly when each one's
extreme pair is among the other's smaller pairs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from geometry.core import GeometricPermutation, OrderedOrder, canonicalize

DISTANCE = "distance"
ANGLE = "angle"

Pair = frozenset


def all_geometric_permutations(labels: str = "ABCD") -> list[GeometricPermutation]:
    seen = {canonicalize(OrderedOrder(p)) for p in itertools.permutations(labels)}
    return sorted(seen, key=lambda gp: gp.canonical.labels)


def distance_implications(gp: GeometricPermutation) -> set[tuple[Pair, Pair]]:
    """(larger, smaller) pairs of centers forced by the distance lemma."""
    x, y, z, w = gp.canonical.labels
    extreme = Pair((x, w))
    return {(extreme, Pair(p)) for p in ((x, y), (y, z), (z, w))}


def distance_incompatible(sigma: GeometricPermutation, tau: GeometricPermutation) -> bool:
    forced = distance_implications(sigma) | distance_implications(tau)
    return any((small, big) in forced for big, small in forced)


def angle_incompatible(sigma: GeometricPermutation, tau: GeometricPermutation) -> bool:
    """True when some orientations read as XYZU and XUYZ, in either role."""
    for s in sigma.orders():
        x, y, z, u = s.labels
        if canonicalize(OrderedOrder((x, u, y, z))) == tau:
            return True
    for t in tau.orders():
        x, y, z, u = t.labels
        if canonicalize(OrderedOrder((x, u, y, z))) == sigma:
            return True
    return False


@dataclass(frozen=True)
class IncompatibilityGraph:
    vertices: tuple[GeometricPermutation, ...]
    edges: dict[frozenset, str]
    excluded: tuple[GeometricPermutation, ...]
    compatible: tuple[GeometricPermutation, ...]
    independence_number: int

    def adjacent(self, sigma: GeometricPermutation, tau: GeometricPermutation) -> bool:
        return frozenset((sigma, tau)) in self.edges

    def edges_among(self, vertices) -> list[tuple[str, str, str]]:
        keep = set(vertices)
        out = []
        for key, kind in self.edges.items():
            if key <= keep:
                a, b = sorted(str(gp) for gp in key)
                out.append((a, b, kind))
        return sorted(out)

    def to_dict(self) -> dict:
        return {
            "vertices": [str(v) for v in self.vertices],
            "edges": [{"u": a, "v": b, "kind": kind} for a, b, kind in self.edges_among(self.vertices)],
            "excluded": [str(v) for v in self.excluded],
            "compatible": [str(v) for v in self.compatible],
            "independence_number": self.independence_number,
        }


def independence_number(vertices, adjacent) -> int:
    vertices = list(vertices)
    for size in range(len(vertices), 0, -1):
        for subset in itertools.combinations(vertices, size):
            if not any(adjacent(a, b) for a, b in itertools.combinations(subset, 2)):
                return size
    return 0


def build_incompatibility_graph(include_angle: bool = False, reference: str = "ABCD") -> IncompatibilityGraph:
    """Edges from the distance lemma (and optionally the angle lemma).

    `excluded` are the permutations adjacent to the reference one,
    `compatible` the rest, and the independence number is taken over
    `compatible`.
    """
    vertices = all_geometric_permutations(reference)
    edges: dict[frozenset, str] = {}
    for sigma, tau in itertools.combinations(vertices, 2):
        if distance_incompatible(sigma, tau):
            edges[frozenset((sigma, tau))] = DISTANCE
        elif include_angle and angle_incompatible(sigma, tau):
            edges[frozenset((sigma, tau))] = ANGLE

    ref = canonicalize(OrderedOrder(tuple(reference)))
    excluded = tuple(v for v in vertices if v != ref and frozenset((ref, v)) in edges)
    compatible = tuple(v for v in vertices if v != ref and v not in excluded)
    alpha = independence_number(compatible, lambda a, b: frozenset((a, b)) in edges)
    return IncompatibilityGraph(tuple(vertices), edges, excluded, compatible, alpha)
