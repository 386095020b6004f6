import pytest

from geometry.core import OrderedOrder, canonicalize
from lemmas.graph import (
    ANGLE,
    DISTANCE,
    all_geometric_permutations,
    angle_incompatible,
    build_incompatibility_graph,
    distance_implications,
    distance_incompatible,
    independence_number,
)


def gp(text):
    return canonicalize(OrderedOrder(tuple(text)))


def test_twelve_geometric_permutations():
    vertices = all_geometric_permutations()
    assert len(vertices) == 12
    assert len({str(v) for v in vertices}) == 12


def test_implications_share_the_extreme_pair():
    pairs = distance_implications(gp("ABCD"))
    assert {big for big, _ in pairs} == {frozenset("AD")}
    assert {small for _, small in pairs} == {frozenset("AB"), frozenset("BC"), frozenset("CD")}


def test_distance_conflict():
    assert distance_incompatible(gp("ABCD"), gp("BADC"))
    assert not distance_incompatible(gp("ABCD"), gp("ABDC"))


@pytest.mark.parametrize("sigma, tau", [("ABCD", "ADCB"), ("ABDC", "BACD")])
def test_opposite_extreme_pairs_are_adjacent(sigma, tau):
    graph = build_incompatibility_graph()
    assert distance_incompatible(gp(sigma), gp(tau))
    assert graph.adjacent(gp(sigma), gp(tau))
    assert graph.adjacent(gp(tau), gp(sigma))
    assert graph.edges[frozenset((gp(sigma), gp(tau)))] == DISTANCE


def test_angle_conflict_is_symmetric():
    assert angle_incompatible(gp("ABCD"), gp("ADBC"))
    assert angle_incompatible(gp("ADBC"), gp("ABCD"))


def test_distance_graph():
    graph = build_incompatibility_graph()
    assert {str(v) for v in graph.excluded} == {"ADCB", "BADC", "BDAC", "CBAD"}
    assert len(graph.compatible) == 7
    assert len(graph.edges_among(graph.compatible)) == 11
    assert graph.independence_number == 2
    assert set(graph.edges.values()) == {DISTANCE}
    assert graph.to_dict()["independence_number"] == 2


def test_angle_edges_leave_a_single_partner():
    graph = build_incompatibility_graph(include_angle=True)
    assert {str(v) for v in graph.compatible} == {"ABDC", "ACBD", "BACD"}
    assert graph.independence_number == 1
    assert ANGLE in set(graph.edges.values())


def test_independence_number_of_small_graphs():
    path = {frozenset((1, 2)), frozenset((2, 3))}
    assert independence_number([1, 2, 3], lambda a, b: frozenset((a, b)) in path) == 2
    assert independence_number([], lambda a, b: True) == 0
