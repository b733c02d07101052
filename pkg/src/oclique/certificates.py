"""Witness objects returned by the solvers.

Every certificate except :class:`Exhaustion` can be re-checked in polynomial
time against the graph it talks about (``check``).  ``to_dict`` gives the
JSON body used by the CLI and the verification reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import Graph, OrientedGraph, UndirectedGraph, VertexMapping, iter_bits, serialize, underlying

__all__ = [
    "Certificate",
    "OcliqueViolation",
    "SpanningEmbedding",
    "Homomorphism",
    "OrientationWitness",
    "MinorModel",
    "Exhaustion",
    "OrderBound",
    "VertexSubset",
    "graph_to_dict",
]


def graph_to_dict(g: Graph) -> dict:
    pairs = g.sorted_edges if isinstance(g, UndirectedGraph) else g.sorted_arcs
    return {"kind": g.kind, "n": g.n, "pairs": [list(p) for p in pairs]}


class Certificate:
    variant: str = "certificate"

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class OcliqueViolation(Certificate):
    """Two distinct vertices at weak directed distance greater than 2."""

    u: int
    v: int
    variant = "oclique-violation"

    def check(self, g: OrientedGraph) -> bool:
        u, v = self.u, self.v
        if u == v or not (0 <= u < g.n and 0 <= v < g.n):
            return False
        if g.adjacent(u, v):
            return False
        out, inn = g.out_masks, g.in_masks
        return not (out[u] & inn[v]) and not (out[v] & inn[u])

    def to_dict(self) -> dict:
        return {"variant": self.variant, "pair": [self.u, self.v]}


@dataclass(frozen=True)
class SpanningEmbedding(Certificate):
    """Injective edge/arc-preserving map of a pattern into a host."""

    mapping: VertexMapping
    spanning: bool = True
    variant = "spanning-embedding"

    def check(self, pattern: Graph, host: Graph) -> bool:
        if self.spanning and pattern.n != host.n:
            return False
        return self.mapping.kind == "embedding" and self.mapping.is_valid(pattern, host)

    def to_dict(self) -> dict:
        return {"variant": self.variant, "spanning": self.spanning, "image": list(self.mapping.image)}


@dataclass(frozen=True)
class Homomorphism(Certificate):
    """Arc-preserving map into ``target``."""

    mapping: VertexMapping
    target: OrientedGraph
    variant = "homomorphism"

    def check(self, source: OrientedGraph) -> bool:
        return self.mapping.is_valid(source, self.target)

    def to_dict(self) -> dict:
        return {"variant": self.variant, "image": list(self.mapping.image),
                "target": graph_to_dict(self.target)}


@dataclass(frozen=True)
class OrientationWitness(Certificate):
    """An orientation of the input graph which is an oclique."""

    orientation: OrientedGraph
    variant = "orientation-witness"

    def check(self, g: UndirectedGraph) -> bool:
        from .analysis import is_oclique

        return underlying(self.orientation) == g and is_oclique(self.orientation)

    def to_dict(self) -> dict:
        return {"variant": self.variant, "orientation": graph_to_dict(self.orientation),
                "ograph": serialize(self.orientation)}


@dataclass(frozen=True)
class MinorModel(Certificate):
    """Disjoint connected branch sets realising ``minor`` as a minor of the host."""

    name: str
    minor: UndirectedGraph
    branch_sets: tuple[frozenset[int], ...]
    variant = "minor-model"

    def check(self, g: UndirectedGraph) -> bool:
        sets = self.branch_sets
        if len(sets) != self.minor.n:
            return False
        masks = []
        used = 0
        for s in sets:
            if not s or any(not 0 <= v < g.n for v in s):
                return False
            mask = sum(1 << v for v in s)
            if mask & used:
                return False
            used |= mask
            masks.append(mask)
        for mask in masks:
            start = mask & -mask
            seen = frontier = start
            while frontier:
                nxt = 0
                for v in iter_bits(frontier):
                    nxt |= g.adj[v]
                frontier = nxt & mask & ~seen
                seen |= frontier
            if seen != mask:
                return False
        for a, b in self.minor.edges:
            if not any(g.adj[v] & masks[b] for v in iter_bits(masks[a])):
                return False
        return True

    def to_dict(self) -> dict:
        return {"variant": self.variant, "minor": self.name,
                "branch_sets": [sorted(s) for s in self.branch_sets]}


@dataclass(frozen=True)
class Exhaustion(Certificate):
    """Record of an exhaustive search that found nothing.

    Absence cannot be re-checked cheaply; the record carries the count of
    rejected candidates and the reason the search stopped.
    """

    candidates_rejected: int
    reason: str = "search exhausted"
    counters: dict = field(default_factory=dict, compare=False)
    variant = "exhaustion"

    def to_dict(self) -> dict:
        return {"variant": self.variant, "candidates_rejected": self.candidates_rejected,
                "reason": self.reason, **({"counters": dict(self.counters)} if self.counters else {})}


@dataclass(frozen=True)
class OrderBound(Certificate):
    """The input order exceeds a proven bound on the order of ocliques in its class."""

    order: int
    bound: int
    reason: str
    variant = "order-bound"

    def check(self, g: Graph) -> bool:
        return g.n == self.order and self.order > self.bound

    def to_dict(self) -> dict:
        return {"variant": self.variant, "order": self.order, "bound": self.bound, "reason": self.reason}


@dataclass(frozen=True)
class VertexSubset(Certificate):
    """A vertex set that induces an oclique (``induced``) or is pairwise at weak distance <= 2 (``relative``)."""

    vertices: tuple[int, ...]
    relation: str = "induced"
    variant = "vertex-subset"

    def check(self, g: OrientedGraph) -> bool:
        from .analysis import weak2_masks

        vs = self.vertices
        if len(set(vs)) != len(vs) or any(not 0 <= v < g.n for v in vs):
            return False
        if self.relation == "relative":
            masks = weak2_masks(g)
            return all(masks[u] >> v & 1 for i, u in enumerate(vs) for v in vs[i + 1:])
        out, inn = g.out_masks, g.in_masks
        chosen = sum(1 << v for v in vs)
        for i, u in enumerate(vs):
            for v in vs[i + 1:]:
                if g.adjacent(u, v):
                    continue
                if not ((out[u] & inn[v]) | (inn[u] & out[v])) & chosen:
                    return False
        return True

    def to_dict(self) -> dict:
        return {"variant": self.variant, "relation": self.relation, "vertices": list(self.vertices)}
