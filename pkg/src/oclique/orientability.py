"""Does an undirected graph have an orientation that is an oclique?

The general decider is a pruned search over orientations.  Two structural
shortcuts sit in front of it: outerplanar graphs are answered from the
catalog of edge-minimal patterns, and planar graphs above order 15 are
rejected outright.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .budget import SearchStats
from .certificates import Certificate, Exhaustion, OrderBound, OrientationWitness, SpanningEmbedding
from .graphs import OrientedGraph, UndirectedGraph, iter_bits, subgraph_embedding
from .structure import diameter, is_outerplanar, is_planar

__all__ = [
    "OUTERPLANAR_ORDER_BOUND",
    "PLANAR_ORDER_BOUND",
    "Decision",
    "orient_as_oclique",
    "outerplanar_oclique_decision",
    "planar_order_gate",
    "edge_minimal",
    "decide_orientable",
]

OUTERPLANAR_ORDER_BOUND = 7
PLANAR_ORDER_BOUND = 15


@dataclass(frozen=True)
class Decision:
    """Verdict of an orientability query and which route produced it."""

    verdict: bool
    certificate: Certificate
    path: str
    embedding: SpanningEmbedding | None = None
    pattern: str | None = None


def _edge_order(g: UndirectedGraph) -> list[tuple[int, int]]:
    """Edges in BFS discovery order from a maximum-degree vertex."""
    seen_edges: set[tuple[int, int]] = set()
    order: list[tuple[int, int]] = []
    visited = [False] * g.n
    for root in sorted(range(g.n), key=lambda v: (-g.degree(v), v)):
        if visited[root]:
            continue
        visited[root] = True
        queue = [root]
        for v in queue:
            for w in iter_bits(g.adj[v]):
                e = (min(v, w), max(v, w))
                if e not in seen_edges:
                    seen_edges.add(e)
                    order.append(e)
                if not visited[w]:
                    visited[w] = True
                    queue.append(w)
    return order


class _Search:
    """Orient edges one at a time, keeping every non-adjacent pair satisfiable.

    A non-adjacent pair ``x, y`` stays alive while it already has a 2-dipath
    through some common neighbour, or some common neighbour still has an
    unoriented edge to ``x`` or ``y``.  Orienting ``a, b`` can only kill
    pairs ``(a, y)`` with ``y`` adjacent to ``b`` and ``(b, y)`` with ``y``
    adjacent to ``a``, so only those are rechecked.
    """

    def __init__(self, g: UndirectedGraph, stats: SearchStats):
        self.g = g
        self.stats = stats
        self.edges = _edge_order(g)
        self.n = g.n
        self.out = [0] * g.n
        self.inn = [0] * g.n
        self.dec = [0] * g.n
        self.rejected = 0

    def _alive(self, x: int, y: int) -> bool:
        adj = self.g.adj
        if adj[x] >> y & 1:
            return True
        if (self.out[x] & self.inn[y]) | (self.inn[x] & self.out[y]):
            return True
        return bool(adj[x] & adj[y] & ~(self.dec[x] & self.dec[y]))

    def _set(self, u: int, v: int, on: bool) -> None:
        bu, bv = 1 << u, 1 << v
        if on:
            self.out[u] |= bv
            self.inn[v] |= bu
            self.dec[u] |= bv
            self.dec[v] |= bu
        else:
            self.out[u] &= ~bv
            self.inn[v] &= ~bu
            self.dec[u] &= ~bv
            self.dec[v] &= ~bu

    def _consistent(self, a: int, b: int) -> bool:
        adj = self.g.adj
        for y in iter_bits(adj[b] & ~(1 << a)):
            if not self._alive(a, y):
                return False
        for y in iter_bits(adj[a] & ~(1 << b)):
            if not self._alive(b, y):
                return False
        return True

    def apply_prefix(self, bits: tuple[int, ...]) -> bool:
        for i, bit in enumerate(bits):
            u, v = self.edges[i]
            if bit:
                u, v = v, u
            self._set(u, v, True)
            if not self._consistent(u, v):
                return False
        return True

    def run(self, start: int) -> OrientedGraph | None:
        edges = self.edges
        m = len(edges)

        def rec(i: int) -> bool:
            self.stats.tick()
            if i == m:
                return True
            a, b = edges[i]
            for u, v in ((a, b), (b, a)) if i else ((a, b),):
                self._set(u, v, True)
                if self._consistent(u, v):
                    if rec(i + 1):
                        return True
                else:
                    self.rejected += 1
                self._set(u, v, False)
            return False

        if not rec(start):
            return None
        arcs = frozenset((u, v) for u in range(self.n) for v in iter_bits(self.out[u]))
        return OrientedGraph(self.n, arcs)


def _run_prefix(args) -> tuple[OrientedGraph | None, int, int]:
    g, prefix, seconds = args
    stats = SearchStats.with_budget(seconds)
    search = _Search(g, stats)
    if not search.apply_prefix(prefix):
        return None, 0, 1
    return search.run(len(prefix)), stats.nodes, search.rejected


def _quick_reject(g: UndirectedGraph) -> str | None:
    if g.n <= 1:
        return None
    if not g.is_connected():
        return "disconnected"
    if diameter(g) > 2:
        return "diameter greater than 2"
    return None


def orient_as_oclique(g: UndirectedGraph, stats: SearchStats | None = None,
                      workers: int = 1, budget_seconds: float | None = None) -> OrientationWitness | Exhaustion:
    """An oclique orientation of ``g`` or an exhaustion record.

    Global reversal preserves oclique-ness, so the first edge is fixed.
    With ``workers > 1`` the directions of the next few edges are fixed per
    task and the lowest-prefix success wins, which keeps the answer
    independent of scheduling.
    """
    stats = stats if stats is not None else SearchStats.with_budget(budget_seconds)
    reason = _quick_reject(g)
    if reason is not None:
        return Exhaustion(0, reason=reason)
    if g.m == 0:
        return OrientationWitness(OrientedGraph(g.n, frozenset()))
    if workers > 1 and g.m > 8:
        return _parallel(g, stats, workers)
    search = _Search(g, stats)
    found = search.run(0)
    stats.bump("pruned", search.rejected)
    if found is None:
        return Exhaustion(search.rejected, reason="all reversal-reduced orientations pruned",
                          counters={"nodes_explored": stats.nodes})
    return OrientationWitness(found)


def _parallel(g: UndirectedGraph, stats: SearchStats, workers: int) -> OrientationWitness | Exhaustion:
    depth = min(g.m - 1, max(1, (4 * workers - 1).bit_length()))
    prefixes = [(0,) + tuple(bits >> (depth - 1 - i) & 1 for i in range(depth)) for bits in range(1 << depth)]
    seconds = None
    if stats.deadline is not None:
        seconds = max(0.0, stats.deadline - time.monotonic())
    rejected = 0
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for found, nodes, rej in pool.map(_run_prefix, [(g, p, seconds) for p in prefixes]):
            stats.tick(nodes)
            rejected += rej
            if found is not None:
                return OrientationWitness(found)
    stats.bump("pruned", rejected)
    return Exhaustion(rejected, reason="all reversal-reduced orientations pruned",
                      counters={"nodes_explored": stats.nodes})


def outerplanar_oclique_decision(g: UndirectedGraph, patterns=None) -> Decision:
    """Answer from the catalog of minimal outerplanar patterns.

    Above order 7 no outerplanar oclique exists (an oclique's order equals
    its oriented chromatic number, which is at most 7 for outerplanar
    graphs).  Otherwise ``g`` is orientable iff a catalog graph of the same
    order is a spanning subgraph; the witness orients the embedded pattern
    as in the catalog and every other edge from lower to higher index.
    ``patterns`` replaces the catalog list, which lets tests break it on purpose.
    """
    from .catalog import minimal_outerplanar

    if not is_outerplanar(g):
        raise ValueError("outerplanar fast path called on a non-outerplanar graph")
    if g.n > OUTERPLANAR_ORDER_BOUND:
        return Decision(False, OrderBound(g.n, OUTERPLANAR_ORDER_BOUND,
                                          "outerplanar graphs have oriented chromatic number at most 7"),
                        "outerplanar")
    tried = 0
    for entry in (minimal_outerplanar() if patterns is None else patterns):
        if entry.graph.n != g.n:
            continue
        tried += 1
        emb = subgraph_embedding(entry.graph, g, spanning=True)
        if emb is None:
            continue
        image = emb.mapping.image
        arcs = {(image[u], image[v]) for u, v in entry.orientation.arcs}
        for u, v in g.edges:
            if (u, v) not in arcs and (v, u) not in arcs:
                arcs.add((u, v))
        witness = OrientationWitness(OrientedGraph(g.n, frozenset(arcs)))
        return Decision(True, witness, "outerplanar", embedding=emb, pattern=entry.id)
    return Decision(False, Exhaustion(tried, reason=f"no order-{g.n} catalog pattern is a spanning subgraph"),
                    "outerplanar")


def planar_order_gate(g: UndirectedGraph) -> bool:
    """False when ``g`` is planar of order above 15, so no orientation is an oclique.

    True is non-committal.
    """
    if not is_planar(g):
        raise ValueError("planar order gate called on a non-planar graph")
    return g.n <= PLANAR_ORDER_BOUND


def _orientable(g: UndirectedGraph, stats: SearchStats | None) -> bool:
    return isinstance(orient_as_oclique(g, stats), OrientationWitness)


def edge_minimal(g: UndirectedGraph, stats: SearchStats | None = None) -> bool:
    """Orientable as an oclique while no spanning subgraph with one edge fewer is."""
    if not _orientable(g, stats):
        return False
    return not any(_orientable(g.without_edge(e), stats) for e in g.sorted_edges)


def decide_orientable(g: UndirectedGraph, method: str = "auto", stats: SearchStats | None = None,
                      workers: int = 1) -> Decision:
    """Combined decider; ``Decision.path`` records the route taken.

    ``auto``: disconnected -> no; planar above order 15 -> no; outerplanar
    -> catalog; otherwise orientation search.
    """
    if method not in ("auto", "brute", "outerplanar"):
        raise ValueError(f"unknown method {method!r}")
    if method == "outerplanar":
        return outerplanar_oclique_decision(g)
    if method == "auto":
        if g.n > 1 and not g.is_connected():
            return Decision(False, Exhaustion(0, reason="disconnected"), "disconnected")
        if g.n > PLANAR_ORDER_BOUND and is_planar(g):
            return Decision(False, OrderBound(g.n, PLANAR_ORDER_BOUND,
                                              "planar ocliques have order at most 15"), "planar-gate")
        if is_outerplanar(g):
            return outerplanar_oclique_decision(g)
    cert = orient_as_oclique(g, stats, workers=workers)
    return Decision(isinstance(cert, OrientationWitness), cert, "brute")
