"""Small undirected graphs up to isomorphism.

Classes on ``n`` vertices are grown from the classes on ``n - 1`` vertices
by adding a last vertex with every possible neighbourhood and keeping one
canonically labelled copy of each result.  Any graph minus its last vertex
belongs to some smaller class, so this reaches every class; with a
hereditary predicate whole branches are cut as soon as it fails.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterator

from ..graphs import UndirectedGraph, canonical_labeling, relabel
from ..structure import girth, is_outerplanar, is_planar, is_triangle_free

__all__ = ["ENUMERATION_LIMIT", "enumerate_graphs", "count_classes", "PREDICATES"]

ENUMERATION_LIMIT = 8

Predicate = Callable[[UndirectedGraph], bool]


def _always(g: UndirectedGraph) -> bool:
    return True


def _girth_at_least(k: int) -> Predicate:
    def pred(g: UndirectedGraph) -> bool:
        return girth(g) >= k

    pred.__name__ = f"girth_at_least_{k}"
    return pred


def _planar_girth(k: int) -> Predicate:
    gk = _girth_at_least(k)

    def pred(g: UndirectedGraph) -> bool:
        return gk(g) and is_planar(g)

    pred.__name__ = f"planar_girth_at_least_{k}"
    return pred


def _planar_triangle_free(g: UndirectedGraph) -> bool:
    return is_triangle_free(g) and is_planar(g)


def _forest(g: UndirectedGraph) -> bool:
    return girth(g) == float("inf")


# name -> (predicate, hereditary)
PREDICATES: dict[str, tuple[Predicate, bool]] = {
    "all": (_always, True),
    "planar": (is_planar, True),
    "outerplanar": (is_outerplanar, True),
    "triangle-free": (is_triangle_free, True),
    "planar-triangle-free": (_planar_triangle_free, True),
    "forest": (_forest, True),
    "planar-girth4": (_planar_girth(4), True),
    "planar-girth5": (_planar_girth(5), True),
    "planar-girth6": (_planar_girth(6), True),
}


@lru_cache(maxsize=None)
def _hereditary_classes(n: int, predicate: Predicate) -> tuple[UndirectedGraph, ...]:
    if n == 0:
        return (UndirectedGraph(0, frozenset()),)
    found: dict[bytes, UndirectedGraph] = {}
    new = n - 1
    for base in _hereditary_classes(n - 1, predicate):
        for nbrs in range(1 << new):
            edges = set(base.edges)
            edges.update((v, new) for v in range(new) if nbrs >> v & 1)
            g = UndirectedGraph(n, frozenset(edges))
            form, position = canonical_labeling(g)
            if form in found:
                continue
            if predicate(g):
                found[form] = relabel(g, position)
    return tuple(found[f] for f in sorted(found))


def enumerate_graphs(n: int, predicate: Predicate | str | None = None,
                     hereditary: bool | None = None) -> Iterator[UndirectedGraph]:
    """Yield one canonically labelled graph per isomorphism class on ``n`` vertices satisfying ``predicate``.

    ``predicate`` may be a callable or a key of :data:`PREDICATES`.  For a
    predicate closed under vertex deletion pass ``hereditary=True`` and the
    growth is pruned; otherwise all classes are grown and then filtered.
    Output is sorted by canonical form.
    """
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"order must be a non-negative integer, got {n!r}")
    if n > ENUMERATION_LIMIT:
        raise ValueError(f"enumeration is limited to n <= {ENUMERATION_LIMIT}, got {n}")
    if predicate is None:
        predicate = "all"
    if isinstance(predicate, str):
        try:
            predicate, default = PREDICATES[predicate]
        except KeyError:
            raise ValueError(f"unknown predicate {predicate!r}") from None
        if hereditary is None:
            hereditary = default
    if hereditary:
        yield from _hereditary_classes(n, predicate)
    else:
        for g in _hereditary_classes(n, _always):
            if predicate(g):
                yield g


def count_classes(n: int, predicate: Predicate | str | None = None, hereditary: bool | None = None) -> int:
    return sum(1 for _ in enumerate_graphs(n, predicate, hereditary))
