from __future__ import annotations

import pytest

import oracles
from oclique.analysis import is_oclique
from oclique.budget import SearchStats
from oclique.catalog import minimal_outerplanar, oclique_O7, oclique_P15
from oclique.certificates import Exhaustion, OrderBound, OrientationWitness
from oclique.errors import BudgetExceeded
from oclique.graphs import UndirectedGraph, subgraph_embedding, underlying
from oclique.orientability import (
    decide_orientable,
    edge_minimal,
    orient_as_oclique,
    outerplanar_oclique_decision,
    planar_order_gate,
)
from oclique.structure import FORBIDDEN, complete_bipartite, complete_graph, cycle_graph, path_graph
from oclique.verify import enumerate_graphs


def test_examples():
    c5 = cycle_graph(5)
    cert = orient_as_oclique(c5)
    assert isinstance(cert, OrientationWitness) and cert.check(c5)
    assert isinstance(orient_as_oclique(cycle_graph(6)), Exhaustion)
    assert isinstance(orient_as_oclique(complete_bipartite(1, 3)), Exhaustion)
    disc = orient_as_oclique(UndirectedGraph(3, frozenset({(0, 1)})))
    assert isinstance(disc, Exhaustion) and disc.reason == "disconnected"
    assert isinstance(orient_as_oclique(UndirectedGraph(1, frozenset())), OrientationWitness)


PETERSEN = UndirectedGraph(10, frozenset(
    [(i, (i + 1) % 5) if i < 4 else (0, 4) for i in range(5)]
    + [(5 + i, 5 + (i + 2) % 5) if i < 3 else (5 + (i + 2) % 5, 5 + i) for i in range(5)]
    + [(i, i + 5) for i in range(5)]))


# diameter 2 and not orientable; the search needs several thousand nodes to exhaust
HARD = UndirectedGraph(11, frozenset([
    (0, 1), (0, 3), (0, 8), (0, 9), (1, 2), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (2, 8), (2, 9), (3, 5),
    (3, 7), (3, 8), (4, 6), (4, 9), (4, 10), (5, 7), (5, 8), (6, 8), (7, 8), (7, 10), (8, 9), (9, 10)]))


def test_petersen_is_not_orientable():
    assert isinstance(orient_as_oclique(PETERSEN), Exhaustion)


def test_quick_rejections():
    assert orient_as_oclique(cycle_graph(6)).reason == "diameter greater than 2"
    assert orient_as_oclique(path_graph(4)).reason == "diameter greater than 2"


def test_exhaustion_explores_the_search():
    cert = orient_as_oclique(complete_bipartite(1, 3))
    assert cert.reason == "all reversal-reduced orientations pruned"
    assert cert.candidates_rejected > 0 and cert.counters["nodes_explored"] > 0


def test_larger_witnesses():
    for g in (underlying(oclique_O7()), underlying(oclique_P15()), complete_graph(6)):
        cert = orient_as_oclique(g)
        assert isinstance(cert, OrientationWitness) and cert.check(g)


@pytest.mark.parametrize("n", range(1, 7))
def test_agrees_with_exhaustive_oracle(n):
    for g in enumerate_graphs(n):
        got = isinstance(orient_as_oclique(g), OrientationWitness)
        assert got == oracles.orientable(g.n, g.edges), g.sorted_edges


def test_budget_is_explicit():
    with pytest.raises(BudgetExceeded):
        orient_as_oclique(HARD, stats=SearchStats(max_nodes=100))
    with pytest.raises(BudgetExceeded):
        orient_as_oclique(HARD, budget_seconds=0.0)


def test_parallel_route_matches_sequential():
    g = underlying(oclique_P15())
    seq = orient_as_oclique(g)
    par = orient_as_oclique(g, workers=2)
    assert isinstance(par, OrientationWitness) and par.check(g)
    assert par == orient_as_oclique(g, workers=2)  # deterministic merge
    assert isinstance(seq, OrientationWitness)
    hard = orient_as_oclique(HARD, workers=2)
    assert isinstance(hard, Exhaustion) and hard.candidates_rejected > 0
    assert isinstance(orient_as_oclique(HARD), Exhaustion)


def test_outerplanar_decision_examples():
    d = outerplanar_oclique_decision(underlying(oclique_O7()))
    assert d.verdict and d.pattern == "k" and d.certificate.check(underlying(oclique_O7()))
    d = outerplanar_oclique_decision(cycle_graph(4))
    assert d.verdict and d.pattern == "d"
    assert d.embedding.check(minimal_outerplanar()[3].graph, cycle_graph(4))
    d = outerplanar_oclique_decision(cycle_graph(8))
    assert not d.verdict and isinstance(d.certificate, OrderBound) and d.certificate.check(cycle_graph(8))
    assert not outerplanar_oclique_decision(cycle_graph(6)).verdict
    with pytest.raises(ValueError):
        outerplanar_oclique_decision(complete_graph(4))


def test_every_outerplanar_graph_of_order_eight_is_rejected():
    for g in enumerate_graphs(8, "outerplanar"):
        assert not outerplanar_oclique_decision(g).verdict


@pytest.mark.parametrize("n", range(1, 8))
def test_outerplanar_decision_agrees_with_search(n):
    for g in enumerate_graphs(n, "outerplanar"):
        if not g.is_connected():
            continue
        fast = outerplanar_oclique_decision(g)
        slow = orient_as_oclique(g)
        assert fast.verdict == isinstance(slow, OrientationWitness)
        if fast.verdict:
            assert fast.certificate.check(g)
            pattern = next(e for e in minimal_outerplanar() if e.id == fast.pattern)
            assert fast.embedding.check(pattern.graph, g)


def test_planar_order_gate():
    assert planar_order_gate(underlying(oclique_P15()))
    assert planar_order_gate(UndirectedGraph(1, frozenset()))
    assert not planar_order_gate(path_graph(16))
    with pytest.raises(ValueError):
        planar_order_gate(FORBIDDEN["K5"])


def test_edge_minimal_examples():
    for entry in minimal_outerplanar():
        assert edge_minimal(entry.graph), entry.id
    o7 = underlying(oclique_O7())
    extra = next((u, v) for u in range(7) for v in range(u + 1, 7) if not o7.adjacent(u, v))
    assert not edge_minimal(o7.with_edge(extra))
    assert not edge_minimal(cycle_graph(6))


def test_decide_paths():
    assert decide_orientable(UndirectedGraph(4, frozenset({(0, 1)}))).path == "disconnected"
    gate = decide_orientable(path_graph(16))
    assert gate.path == "disconnected" or gate.path == "planar-gate"
    star = UndirectedGraph(16, frozenset((0, i) for i in range(1, 16)))
    d = decide_orientable(star)
    assert d.path == "planar-gate" and not d.verdict
    d = decide_orientable(cycle_graph(5))
    assert d.path == "outerplanar" and d.verdict
    d = decide_orientable(underlying(oclique_P15()))
    assert d.path == "brute" and d.verdict
    d = decide_orientable(cycle_graph(5), method="brute")
    assert d.path == "brute" and d.verdict
    d = decide_orientable(complete_graph(4), method="auto")
    assert d.path == "brute" and d.verdict and is_oclique(d.certificate.orientation)
    with pytest.raises(ValueError):
        decide_orientable(cycle_graph(5), method="magic")


def test_o7_is_spanning_in_every_orientable_outerplanar_seven_vertex_graph():
    o7 = underlying(oclique_O7())
    found = 0
    for g in enumerate_graphs(7, "outerplanar"):
        if g.is_connected() and isinstance(orient_as_oclique(g), OrientationWitness):
            assert subgraph_embedding(o7, g, spanning=True) is not None
            found += 1
    assert found >= 1
