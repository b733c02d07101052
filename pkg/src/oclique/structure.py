"""Metric and recognition routines on (underlying) graphs.

Planarity and outerplanarity are decided by the left-right planarity test
from networkx (outerplanarity as planarity of the graph plus an apex joined
to every vertex).  Failures come with a forbidden-minor model found by an
exact contraction search, which also serves as the independent reference
route (:func:`has_minor`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from .certificates import MinorModel
from .errors import LimitExceeded
from .graphs import (
    OrientedGraph,
    UndirectedGraph,
    canonical_form,
    iter_bits,
    subgraph_embedding_map,
)

__all__ = [
    "INF",
    "MetricsRecord",
    "PlesnikClass",
    "directed_distance",
    "weak_distance",
    "distance",
    "girth",
    "diameter",
    "is_triangle_free",
    "domination_number",
    "is_dominating",
    "complete_graph",
    "complete_bipartite",
    "cycle_graph",
    "path_graph",
    "FORBIDDEN",
    "find_minor",
    "has_minor",
    "is_planar",
    "planarity_obstruction",
    "is_outerplanar",
    "outerplanarity_obstruction",
    "plesnik_classify",
    "plesnik_roles",
    "metrics",
]

INF = math.inf
MINOR_LIMIT = 12
DOMINATION_LIMIT = 20


def _check_vertex(g, *vs: int) -> None:
    for v in vs:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")


def _bfs_layers(masks, source: int, target: int) -> float:
    if source == target:
        return 0
    seen = frontier = 1 << source
    dist = 0
    while frontier:
        dist += 1
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= masks[v]
        if nxt >> target & 1:
            return dist
        frontier = nxt & ~seen
        seen |= frontier
    return INF


def directed_distance(g: OrientedGraph, u: int, v: int) -> float:
    """Length of a shortest directed path u -> v (``INF`` if none)."""
    _check_vertex(g, u, v)
    return _bfs_layers(g.out_masks, u, v)


def weak_distance(g: OrientedGraph, u: int, v: int) -> float:
    return min(directed_distance(g, u, v), directed_distance(g, v, u))


def distance(g: UndirectedGraph, u: int, v: int) -> float:
    _check_vertex(g, u, v)
    return _bfs_layers(g.adj, u, v)


def girth(g: UndirectedGraph) -> float:
    """Length of a shortest cycle; ``INF`` for forests."""
    best = INF
    adj = g.adj
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = [root]
        for u in queue:
            if 2 * dist[u] >= best:
                break
            for w in iter_bits(adj[u]):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def diameter(g: UndirectedGraph) -> float:
    """Largest pairwise distance; ``INF`` when disconnected, 0 for n <= 1."""
    full = (1 << g.n) - 1
    worst = 0
    for root in range(g.n):
        seen = frontier = 1 << root
        ecc = 0
        while True:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~seen
            if not frontier:
                break
            seen |= frontier
            ecc += 1
        if seen != full:
            return INF
        worst = max(worst, ecc)
    return worst


def is_triangle_free(g: UndirectedGraph) -> bool:
    return all(not (g.adj[u] & g.adj[v]) for u, v in g.edges)


def is_dominating(g: UndirectedGraph, subset) -> bool:
    covered = 0
    for v in subset:
        covered |= g.adj[v] | (1 << v)
    return covered == (1 << g.n) - 1


def domination_number(g: UndirectedGraph) -> tuple[int, tuple[int, ...]]:
    """Minimum dominating set size and one witness.

    A greedy cover gives the upper bound; subset sizes below it are tried in
    increasing order.
    """
    n = g.n
    if n < 1:
        raise ValueError("domination number needs n >= 1")
    if n > DOMINATION_LIMIT:
        raise LimitExceeded(f"domination_number supports n <= {DOMINATION_LIMIT}, got {n}")
    full = (1 << n) - 1
    closed = [g.adj[v] | (1 << v) for v in range(n)]
    greedy: list[int] = []
    covered = 0
    while covered != full:
        v = max(range(n), key=lambda x: ((closed[x] & ~covered).bit_count(), -x))
        greedy.append(v)
        covered |= closed[v]
    for size in range(1, len(greedy)):
        for subset in combinations(range(n), size):
            acc = 0
            for v in subset:
                acc |= closed[v]
            if acc == full:
                return size, subset
    return len(greedy), tuple(sorted(greedy))


# -- named graphs ------------------------------------------------------------------


def complete_graph(n: int) -> UndirectedGraph:
    return UndirectedGraph(n, frozenset(combinations(range(n), 2)))


def complete_bipartite(a: int, b: int) -> UndirectedGraph:
    return UndirectedGraph(a + b, frozenset((i, a + j) for i in range(a) for j in range(b)))


def cycle_graph(n: int) -> UndirectedGraph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return UndirectedGraph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> UndirectedGraph:
    return UndirectedGraph(n, frozenset((i, i + 1) for i in range(n - 1)))


FORBIDDEN = {
    "K4": complete_graph(4),
    "K2,3": complete_bipartite(2, 3),
    "K5": complete_graph(5),
    "K3,3": complete_bipartite(3, 3),
}


# -- minors --------------------------------------------------------------------------


def _components(g: UndirectedGraph) -> list[int]:
    left = (1 << g.n) - 1
    comps = []
    while left:
        seen = frontier = left & -left
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        comps.append(seen)
        left &= ~seen
    return comps


def _quotient(g_adj, sets: list[int]) -> UndirectedGraph:
    edges = set()
    for i, a in enumerate(sets):
        reach = 0
        for v in iter_bits(a):
            reach |= g_adj[v]
        for j in range(i + 1, len(sets)):
            if reach & sets[j]:
                edges.add((i, j))
    return UndirectedGraph(len(sets), frozenset(edges))


def find_minor(g: UndirectedGraph, h: UndirectedGraph, *,
               limit: int | None = MINOR_LIMIT) -> tuple[frozenset[int], ...] | None:
    """Branch sets of an ``h``-minor of ``g``, or ``None`` if there is none.

    ``h`` must be connected.  Within a connected component, unused vertices
    can always be merged into a neighbouring branch set, so it suffices to
    search edge contractions; vertices of degree <= 1 are dropped when
    ``h`` has minimum degree >= 2, and degree-2 vertices are suppressed when
    it has minimum degree >= 3.  Failed quotients are memoised by canonical
    form.
    """
    if limit is not None and g.n > limit:
        raise LimitExceeded(f"exact minor search supports n <= {limit}, got {g.n}")
    if h.n == 0:
        return ()
    if not h.is_connected():
        raise ValueError("find_minor expects a connected minor")
    min_deg = min(h.degree(v) for v in range(h.n))
    failed: set[bytes] = set()
    g_adj = g.adj

    def reduce(sets: list[int]) -> list[int]:
        changed = True
        while changed and len(sets) > h.n:
            changed = False
            q = _quotient(g_adj, sets)
            for i in range(q.n):
                d = q.degree(i)
                if min_deg >= 2 and d <= 1:
                    sets = sets[:i] + sets[i + 1:]
                    changed = True
                    break
                if min_deg >= 3 and d == 2:
                    j = min(iter_bits(q.adj[i]))
                    merged = sets[i] | sets[j]
                    sets = [s for k, s in enumerate(sets) if k not in (i, j)] + [merged]
                    changed = True
                    break
        return sorted(sets)

    def search(sets: list[int]) -> list[int] | None:
        sets = reduce(sets)
        if len(sets) < h.n:
            return None
        q = _quotient(g_adj, sets)
        if q.m < h.m:
            return None
        key = canonical_form(q) if q.n <= 16 else None
        if key is not None and key in failed:
            return None
        image = subgraph_embedding_map(h, q, spanning=q.n == h.n)
        if image is not None:
            return [sets[image[x]] for x in range(h.n)]
        if q.n > h.n:
            for i, j in sorted(q.edges):
                merged = sets[i] | sets[j]
                found = search([s for k, s in enumerate(sets) if k not in (i, j)] + [merged])
                if found is not None:
                    return found
        if key is not None:
            failed.add(key)
        return None

    for comp in _components(g):
        if comp.bit_count() < h.n:
            continue
        found = search([1 << v for v in iter_bits(comp)])
        if found is not None:
            return tuple(frozenset(iter_bits(s)) for s in found)
    return None


def has_minor(g: UndirectedGraph, name: str) -> bool:
    return find_minor(g, FORBIDDEN[name]) is not None


def _to_nx(g: UndirectedGraph) -> nx.Graph:
    ng = nx.Graph()
    ng.add_nodes_from(range(g.n))
    ng.add_edges_from(g.edges)
    return ng


def _model_from_subgraph(g: UndirectedGraph, edges, names: tuple[str, ...]) -> MinorModel:
    sub = UndirectedGraph(g.n, frozenset((min(e), max(e)) for e in edges))
    for name in names:
        sets = find_minor(sub, FORBIDDEN[name], limit=None)
        if sets is not None:
            return MinorModel(name, FORBIDDEN[name], sets)
    raise AssertionError("Kuratowski subgraph without the expected minor")


def is_planar(g: UndirectedGraph) -> bool:
    """Planarity (no K5 and no K3,3 minor)."""
    n, m = g.n, g.m
    if n >= 3 and m > 3 * n - 6:
        return False
    if n >= 3 and m > 2 * n - 4 and is_triangle_free(g):
        return False
    return nx.check_planarity(_to_nx(g))[0]


def planarity_obstruction(g: UndirectedGraph) -> MinorModel | None:
    """A K5 or K3,3 minor model, or ``None`` when ``g`` is planar."""
    planar, kuratowski = nx.check_planarity(_to_nx(g), counterexample=True)
    if planar:
        return None
    return _model_from_subgraph(g, kuratowski.edges(), ("K5", "K3,3"))


def _with_apex(g: UndirectedGraph) -> nx.Graph:
    ng = _to_nx(g)
    ng.add_edges_from((g.n, v) for v in range(g.n))
    return ng


def is_outerplanar(g: UndirectedGraph) -> bool:
    """Outerplanarity (no K4 and no K2,3 minor)."""
    if g.n >= 2 and g.m > 2 * g.n - 3:
        return False
    return nx.check_planarity(_with_apex(g))[0]


def outerplanarity_obstruction(g: UndirectedGraph) -> MinorModel | None:
    """A K4 or K2,3 minor model, or ``None`` when ``g`` is outerplanar.

    A Kuratowski subgraph of ``g`` plus an apex loses at most the apex, which
    leaves a subdivided K4/K2,3 or a subdivided K5/K3,3 minus one edge; the
    minor search then runs on that sparse remainder.
    """
    planar, kuratowski = nx.check_planarity(_with_apex(g), counterexample=True)
    if planar:
        return None
    edges = [e for e in kuratowski.edges() if g.n not in e]
    return _model_from_subgraph(g, edges, ("K4", "K2,3"))


# -- Plesnik families -----------------------------------------------------------------


@dataclass(frozen=True)
class PlesnikClass:
    """``family`` is ``"star"``, ``"k2n"``, ``"c5blowup"`` or ``None`` (not in the families)."""

    family: str | None
    params: tuple[int, ...] = ()

    def __str__(self) -> str:
        if self.family is None:
            return "NotInFamilies"
        label = {"star": "Star", "k2n": "K2n", "c5blowup": "C5Blowup"}[self.family]
        return f"{label}({','.join(map(str, self.params))})"


NOT_IN_FAMILIES = PlesnikClass(None)


def plesnik_roles(g: UndirectedGraph) -> tuple[PlesnikClass, dict]:
    """Classification plus the distinguished vertices.

    Roles: ``{"center": w}`` for stars, ``{"poles": (u, v)}`` for K_{2,n},
    ``{"a": a, "b": b, "c": c}`` for the duplicated 5-cycle, where the
    ``p`` copies are adjacent to a and b and the ``q`` copies to a and c.
    Stars take precedence, so K_{2,1} is reported as Star(2).
    """
    n, m, adj = g.n, g.m, g.adj
    full = (1 << n) - 1
    deg = [a.bit_count() for a in adj]
    if n >= 2 and m == n - 1:
        for w in range(n):
            if deg[w] == n - 1:
                return PlesnikClass("star", (n - 1,)), {"center": w}
    if n >= 3 and m == 2 * (n - 2):
        for u, v in combinations(range(n), 2):
            if adj[u] >> v & 1:
                continue
            rest = full & ~(1 << u) & ~(1 << v)
            if adj[u] == rest and adj[v] == rest and all(adj[x] == (1 << u) | (1 << v) for x in iter_bits(rest)):
                return PlesnikClass("k2n", (n - 2,)), {"poles": (u, v)}
    if n >= 5 and m == 2 * (n - 3) + 1:
        for a in range(n):
            if deg[a] != n - 3:
                continue
            others = full & ~adj[a] & ~(1 << a)
            b, c = sorted(iter_bits(others))
            if not adj[b] >> c & 1:
                continue
            ok = True
            for x in iter_bits(adj[a]):
                if adj[x] not in ((1 << a) | (1 << b), (1 << a) | (1 << c)):
                    ok = False
                    break
            p, q = deg[b] - 1, deg[c] - 1
            if ok and p >= 1 and q >= 1:
                if p > q:
                    b, c, p, q = c, b, q, p
                return PlesnikClass("c5blowup", (p, q)), {"a": a, "b": b, "c": c}
    return NOT_IN_FAMILIES, {}


def plesnik_classify(g: UndirectedGraph) -> PlesnikClass:
    return plesnik_roles(g)[0]


# -- summary record -------------------------------------------------------------------


@dataclass(frozen=True)
class MetricsRecord:
    girth: float
    diameter: float
    domination_number: int
    dominating_set: tuple[int, ...]
    planar: bool
    outerplanar: bool

    def to_dict(self) -> dict:
        def num(x):
            return "inf" if x == INF else int(x)

        return {"girth": num(self.girth), "diameter": num(self.diameter),
                "domination_number": self.domination_number,
                "dominating_set": list(self.dominating_set),
                "planar": self.planar, "outerplanar": self.outerplanar}


def metrics(g: UndirectedGraph) -> MetricsRecord:
    gamma, witness = domination_number(g)
    return MetricsRecord(girth(g), diameter(g), gamma, tuple(witness), is_planar(g), is_outerplanar(g))
