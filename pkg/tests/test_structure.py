from __future__ import annotations

import itertools
import math

import networkx as nx
import pytest
from hypothesis import given, settings

from oclique.catalog import oclique_O7, oclique_P15, plesnik_c5blowup, plesnik_k2n, plesnik_star, target_T6
from oclique.certificates import MinorModel
from oclique.errors import LimitExceeded
from oclique.graphs import OrientedGraph, UndirectedGraph, relabel, underlying
from oclique.structure import (
    FORBIDDEN,
    INF,
    NOT_IN_FAMILIES,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    diameter,
    directed_distance,
    distance,
    domination_number,
    find_minor,
    girth,
    has_minor,
    is_dominating,
    is_outerplanar,
    is_planar,
    is_triangle_free,
    metrics,
    outerplanarity_obstruction,
    path_graph,
    planarity_obstruction,
    plesnik_classify,
    plesnik_roles,
    weak_distance,
)
from oclique.verify import enumerate_graphs
from strategies import oriented_graphs, undirected_graphs

DIPATH = OrientedGraph(3, frozenset({(0, 1), (1, 2)}))
DC5 = OrientedGraph(5, frozenset((i, (i + 1) % 5) for i in range(5)))


def to_nx(g: UndirectedGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def test_directed_distances():
    assert directed_distance(DIPATH, 0, 2) == 2
    assert directed_distance(DIPATH, 2, 0) == INF
    assert directed_distance(DC5, 0, 2) == 2 and directed_distance(DC5, 2, 0) == 3
    assert directed_distance(DC5, 3, 3) == 0
    assert weak_distance(DIPATH, 0, 2) == 2
    assert weak_distance(DC5, 0, 2) == 2
    assert weak_distance(OrientedGraph(2, frozenset()), 0, 1) == INF
    with pytest.raises(ValueError):
        directed_distance(DIPATH, 0, 3)


@given(oriented_graphs(max_n=7))
def test_weak_distance_is_symmetric_min(g):
    for u, v in itertools.combinations(range(g.n), 2):
        w = weak_distance(g, u, v)
        assert w == weak_distance(g, v, u)
        assert w == min(directed_distance(g, u, v), directed_distance(g, v, u))


def test_girth_examples():
    assert girth(cycle_graph(5)) == 5
    assert girth(underlying(target_T6())) == 4
    assert girth(path_graph(6)) == INF
    assert girth(complete_graph(4)) == 3


@given(undirected_graphs(max_n=8))
def test_girth_matches_networkx(g):
    expected = nx.girth(to_nx(g))
    assert girth(g) == (INF if expected == math.inf else expected)


@given(undirected_graphs(max_n=8))
def test_diameter_and_distance_match_networkx(g):
    h = to_nx(g)
    if g.n and nx.is_connected(h):
        assert diameter(g) == nx.diameter(h)
    elif g.n > 1:
        assert diameter(g) == INF
    lengths = dict(nx.all_pairs_shortest_path_length(h))
    for u, v in itertools.combinations(range(g.n), 2):
        assert distance(g, u, v) == lengths[u].get(v, INF)


def test_diameter_examples():
    assert diameter(complete_bipartite(2, 4)) == 2
    assert diameter(path_graph(3)) == 2
    assert diameter(UndirectedGraph(2, frozenset())) == INF


def test_domination_examples():
    assert domination_number(plesnik_star(5))[0] == 1
    assert domination_number(underlying(oclique_P15())) == (1, (0,))
    size, witness = domination_number(cycle_graph(4))
    assert size == 2 and is_dominating(cycle_graph(4), witness)
    with pytest.raises(LimitExceeded):
        domination_number(path_graph(21))


@given(undirected_graphs(max_n=8))
def test_domination_is_minimum(g):
    size, witness = domination_number(g)
    assert len(witness) == size and is_dominating(g, witness)
    assert not any(is_dominating(g, s) for s in itertools.combinations(range(g.n), size - 1))


def test_triangle_free():
    assert is_triangle_free(cycle_graph(4))
    assert not is_triangle_free(complete_graph(3))


def test_planarity_examples():
    assert is_planar(underlying(oclique_P15()))
    for name in ("K5", "K3,3"):
        g = FORBIDDEN[name]
        assert not is_planar(g)
        model = planarity_obstruction(g)
        assert model is not None and model.name == name and model.check(g)
    assert planarity_obstruction(complete_graph(4)) is None


def test_outerplanarity_examples():
    assert is_outerplanar(underlying(oclique_O7()))
    for name in ("K4", "K2,3"):
        g = FORBIDDEN[name]
        assert not is_outerplanar(g)
        model = outerplanarity_obstruction(g)
        assert model is not None and model.name == name and model.check(g)
    assert outerplanarity_obstruction(cycle_graph(6)) is None


def test_obstructions_on_larger_graphs():
    # the octahedron K_{2,2,2} is planar but not outerplanar; K_{3,4} is not planar
    octa = UndirectedGraph(6, frozenset(e for e in itertools.combinations(range(6), 2)
                                        if {e[0] // 2} != {e[1] // 2}))
    model = outerplanarity_obstruction(octa)
    assert is_planar(octa) and model is not None and model.check(octa)
    k34 = complete_bipartite(3, 4)
    model = planarity_obstruction(k34)
    assert model is not None and model.check(k34)


@pytest.mark.parametrize("n", range(1, 7))
def test_planarity_agrees_with_minor_search(n):
    """Exhaustive at each order: networkx planarity and the forbidden-minor search agree."""
    for g in enumerate_graphs(n):
        planar = not (has_minor(g, "K5") or has_minor(g, "K3,3"))
        outer = not (has_minor(g, "K4") or has_minor(g, "K2,3"))
        assert is_planar(g) == planar
        assert is_outerplanar(g) == outer


def test_find_minor_returns_checked_model():
    g = cycle_graph(7).with_edge((0, 3)).with_edge((1, 5))
    assert find_minor(cycle_graph(7).with_edge((0, 3)).with_edge((3, 5)), FORBIDDEN["K4"]) is None
    sets = find_minor(g, FORBIDDEN["K4"])
    assert sets is not None and MinorModel("K4", FORBIDDEN["K4"], sets).check(g)
    assert find_minor(cycle_graph(8), FORBIDDEN["K4"]) is None
    with pytest.raises(LimitExceeded):
        find_minor(path_graph(13), FORBIDDEN["K4"])


@settings(max_examples=40)
@given(undirected_graphs(max_n=8))
def test_planarity_is_relabelling_invariant(g):
    perm = list(reversed(range(g.n)))
    h = relabel(g, perm)
    assert is_planar(g) == is_planar(h)
    assert is_outerplanar(g) == is_outerplanar(h)
    assert not is_outerplanar(g) or is_planar(g)


def test_plesnik_examples():
    assert str(plesnik_classify(plesnik_star(5))) == "Star(5)"
    assert str(plesnik_classify(plesnik_k2n(4))) == "K2n(4)"
    assert str(plesnik_classify(cycle_graph(5))) == "C5Blowup(1,1)"
    assert str(plesnik_classify(plesnik_c5blowup(3, 1))) == "C5Blowup(1,3)"
    assert plesnik_classify(cycle_graph(6)) == NOT_IN_FAMILIES
    assert str(NOT_IN_FAMILIES) == "NotInFamilies"
    # K_{2,1} is the path P3, reported as the star
    assert str(plesnik_classify(plesnik_k2n(1))) == "Star(2)"


def test_plesnik_roles_name_the_structure():
    g = plesnik_c5blowup(2, 3)
    cls, roles = plesnik_roles(g)
    a, b, c = roles["a"], roles["b"], roles["c"]
    assert g.adjacent(b, c) and not g.adjacent(a, b) and not g.adjacent(a, c)
    assert len(set(g.neighbors(b)) - {c}) == cls.params[0]
    u, v = plesnik_roles(plesnik_k2n(3))[1]["poles"]
    assert not plesnik_k2n(3).adjacent(u, v)


def test_metrics_record():
    rec = metrics(cycle_graph(5))
    assert rec.to_dict() == {"girth": 5, "diameter": 2, "domination_number": 2,
                             "dominating_set": [0, 2], "planar": True, "outerplanar": True}
    assert metrics(path_graph(3)).to_dict()["girth"] == "inf"
