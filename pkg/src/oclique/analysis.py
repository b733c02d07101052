"""Oclique recognition, oriented colourings, homomorphisms and the three clique/chromatic numbers.

The workhorse is the *weak-2 mask*: for each vertex ``u`` the set of
vertices at weak directed distance at most 2 from ``u``,

    adj(u)  |  out(out(u))  |  in(in(u)).

Everything below is phrased in terms of those masks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

from .budget import SearchStats
from .certificates import Certificate, Homomorphism, OcliqueViolation
from .errors import BudgetExceeded
from .graphs import (
    OrientedGraph,
    UndirectedGraph,
    VertexMapping,
    canonical_labeling,
    iter_bits,
    orientation_from_index,
    relabel,
)

__all__ = [
    "weak2_masks",
    "is_oclique",
    "oclique_violation",
    "coloring_violation",
    "is_oriented_coloring",
    "homomorphism_map",
    "homomorphism",
    "enumerate_tournaments",
    "oriented_coloring",
    "chi_o",
    "omega_ro",
    "omega_ao",
    "max_over_orientations",
    "chi_o_undirected",
    "omega_ao_undirected",
    "omega_ro_undirected",
    "AnalysisResult",
    "analyse",
    "max_signed_common_neighbourhood",
]


def weak2_masks(g: OrientedGraph) -> list[int]:
    """``masks[u]``: vertices other than ``u`` at weak directed distance <= 2."""
    out, inn = g.out_masks, g.in_masks
    masks = []
    for u in range(g.n):
        reach = out[u] | inn[u]
        for w in iter_bits(out[u]):
            reach |= out[w]
        for w in iter_bits(inn[u]):
            reach |= inn[w]
        masks.append(reach & ~(1 << u))
    return masks


def oclique_violation(g: OrientedGraph) -> OcliqueViolation | None:
    """Lexicographically first pair at weak distance > 2, or ``None`` for an oclique."""
    full = (1 << g.n) - 1
    for u, reach in enumerate(weak2_masks(g)):
        missing = full & ~reach & ~(1 << u) & ~((1 << (u + 1)) - 1)
        if missing:
            return OcliqueViolation(u, (missing & -missing).bit_length() - 1)
    return None


def is_oclique(g: OrientedGraph) -> bool:
    full = (1 << g.n) - 1
    return all((reach | (1 << u)) == full for u, reach in enumerate(weak2_masks(g)))


# -- oriented colourings --------------------------------------------------------------


def coloring_violation(g: OrientedGraph, colors: Sequence[int], k: int) -> tuple | None:
    """``None`` if ``colors`` is an oriented k-colouring, else the offending evidence.

    Returns ``("adjacent", u, v)`` for an arc inside a colour class, or
    ``("opposite", (u, v), (w, x))`` for two arcs running in opposite
    directions between the same two classes.
    """
    if len(colors) != g.n:
        raise ValueError(f"colouring has {len(colors)} entries for {g.n} vertices")
    if any(not 0 <= c < k for c in colors):
        raise ValueError(f"colour outside 0..{k - 1}")
    seen: dict[tuple[int, int], tuple[int, int]] = {}
    for u, v in sorted(g.arcs):
        a, b = colors[u], colors[v]
        if a == b:
            return ("adjacent", u, v)
        if (b, a) in seen:
            return ("opposite", seen[(b, a)], (u, v))
        seen.setdefault((a, b), (u, v))
    return None


def is_oriented_coloring(g: OrientedGraph, colors: Sequence[int], k: int) -> bool:
    return coloring_violation(g, colors, k) is None


# -- homomorphisms ----------------------------------------------------------------


def _bfs_order(g: OrientedGraph) -> list[int]:
    adj = g.adj
    order: list[int] = []
    placed = 0
    remaining = set(range(g.n))
    while remaining:
        v = max(remaining, key=lambda x: ((adj[x] & placed).bit_count(), adj[x].bit_count(), -x))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return order


def homomorphism_map(g: OrientedGraph, h: OrientedGraph,
                     stats: SearchStats | None = None) -> tuple[int, ...] | None:
    """Arc-preserving map ``V(g) -> V(h)`` by backtracking, or ``None`` after exhausting all."""
    n = g.n
    if n == 0:
        return ()
    if h.n == 0:
        return None
    order = _bfs_order(g)
    pos = {v: i for i, v in enumerate(order)}
    need_out: list[list[int]] = [[] for _ in range(n)]  # earlier w with w -> v
    need_in: list[list[int]] = [[] for _ in range(n)]   # earlier w with v -> w
    for i, v in enumerate(order):
        for w in iter_bits(g.in_masks[v]):
            if pos[w] < i:
                need_out[i].append(pos[w])
        for w in iter_bits(g.out_masks[v]):
            if pos[w] < i:
                need_in[i].append(pos[w])
    h_out, h_in = h.out_masks, h.in_masks
    full = (1 << h.n) - 1
    img = [0] * n

    def extend(i: int) -> bool:
        if stats is not None:
            stats.tick()
        if i == n:
            return True
        cand = full
        for j in need_out[i]:
            cand &= h_out[img[j]]
        for j in need_in[i]:
            cand &= h_in[img[j]]
        for t in iter_bits(cand):
            img[i] = t
            if extend(i + 1):
                return True
        return False

    if not extend(0):
        return None
    image = [0] * n
    for i, v in enumerate(order):
        image[v] = img[i]
    return tuple(image)


def homomorphism(g: OrientedGraph, h: OrientedGraph, stats: SearchStats | None = None) -> Homomorphism | None:
    image = homomorphism_map(g, h, stats)
    if image is None:
        return None
    return Homomorphism(VertexMapping("homomorphism", image), h)


@lru_cache(maxsize=None)
def _tournament_classes(k: int) -> tuple[OrientedGraph, ...]:
    if k == 1:
        return (OrientedGraph(1, frozenset()),)
    found: dict[bytes, OrientedGraph] = {}
    for base in _tournament_classes(k - 1):
        new = k - 1
        for bits in range(1 << new):
            arcs = set(base.arcs)
            for v in range(new):
                arcs.add((new, v) if bits >> v & 1 else (v, new))
            t = OrientedGraph(k, frozenset(arcs))
            form, position = canonical_labeling(t)
            if form not in found:
                found[form] = relabel(t, position)
    return tuple(found[f] for f in sorted(found))


def enumerate_tournaments(k: int) -> list[OrientedGraph]:
    """One canonically labelled tournament per isomorphism class on ``k`` vertices.

    Built by adding a vertex to every class on ``k - 1`` vertices in every
    possible way; ordered by canonical form.
    """
    if not 1 <= k <= 7:
        raise ValueError(f"tournament enumeration supports 1 <= k <= 7, got {k}")
    return list(_tournament_classes(k))


# -- chromatic number ---------------------------------------------------------------


def oriented_coloring(g: OrientedGraph, k: int, stats: SearchStats | None = None) -> list[int] | None:
    """An oriented k-colouring by backtracking, or ``None``.

    Colour classes are opened in order (a vertex may only use one new
    colour), and ``count[a][b]`` tracks arcs from class a to class b so that
    opposite arcs between two classes are rejected on placement.
    """
    n = g.n
    if n == 0:
        return []
    if k <= 0:
        return None
    order = _bfs_order(g)
    pos = {v: i for i, v in enumerate(order)}
    outs: list[list[int]] = []
    ins: list[list[int]] = []
    for i, v in enumerate(order):
        outs.append([pos[w] for w in iter_bits(g.out_masks[v]) if pos[w] < i])
        ins.append([pos[w] for w in iter_bits(g.in_masks[v]) if pos[w] < i])
    count = [[0] * k for _ in range(k)]
    col = [0] * n

    def rec(i: int, used: int) -> bool:
        if stats is not None:
            stats.tick()
        if i == n:
            return True
        for c in range(min(k, used + 1)):
            heads = {col[j] for j in outs[i]}  # arcs v -> w
            tails = {col[j] for j in ins[i]}   # arcs w -> v
            if c in heads or c in tails or heads & tails:
                continue
            if any(count[d][c] for d in heads) or any(count[c][d] for d in tails):
                continue
            col[i] = c
            for j in outs[i]:
                count[c][col[j]] += 1
            for j in ins[i]:
                count[col[j]][c] += 1
            if rec(i + 1, max(used, c + 1)):
                return True
            for j in outs[i]:
                count[c][col[j]] -= 1
            for j in ins[i]:
                count[col[j]][c] -= 1
        return False

    if not rec(0, 0):
        return None
    colors = [0] * n
    for i, v in enumerate(order):
        colors[v] = col[i]
    return colors


def _tournament_from_coloring(g: OrientedGraph, colors: Sequence[int], k: int) -> OrientedGraph:
    arcs = {(colors[u], colors[v]) for u, v in g.arcs}
    for a in range(k):
        for b in range(a + 1, k):
            if (a, b) not in arcs and (b, a) not in arcs:
                arcs.add((a, b))
    return OrientedGraph(k, frozenset(arcs))


def chi_o(g: OrientedGraph, max_k: int = 7, start: int | None = None,
          method: str = "coloring", stats: SearchStats | None = None) -> tuple[int, Homomorphism]:
    """Oriented chromatic number with a homomorphism into a tournament of that order.

    Any homomorphism target extends to a tournament on the same vertices by
    adding arcs, and adding arcs to the target keeps every homomorphism, so
    the smallest tournament target has the smallest possible order.

    ``k`` is scanned upwards from ``start`` (default: the relative oriented
    clique number, a lower bound).  ``method="coloring"`` backtracks over
    oriented colourings; ``method="tournaments"`` tries every tournament
    class of order ``k`` as a homomorphism target.  Raises
    :class:`BudgetExceeded` when no colouring with ``max_k`` colours exists.
    """
    if g.n == 0:
        return 0, Homomorphism(VertexMapping("homomorphism", ()), OrientedGraph(0, frozenset()))
    if start is None:
        start = omega_ro(g)[0]
    start = max(start, 1)
    if start > max_k:
        raise BudgetExceeded(f"chi_o exceeds the cap {max_k}", lower_bound=start,
                             progress=stats.snapshot() if stats else None)
    for k in range(start, max_k + 1):
        if method == "coloring":
            colors = oriented_coloring(g, k, stats)
            if colors is not None:
                target = _tournament_from_coloring(g, colors, k)
                return k, Homomorphism(VertexMapping("homomorphism", tuple(colors)), target)
        elif method == "tournaments":
            if k > 7:
                raise BudgetExceeded("tournament targets are only enumerated up to order 7",
                                     lower_bound=k)
            for t in enumerate_tournaments(k):
                cert = homomorphism(g, t, stats)
                if cert is not None:
                    return k, cert
        else:
            raise ValueError(f"unknown method {method!r}")
    raise BudgetExceeded(f"chi_o exceeds the cap {max_k}", lower_bound=max_k + 1,
                         progress=stats.snapshot() if stats else None)


# -- clique numbers ----------------------------------------------------------------


def _partner_order(masks: Sequence[int]) -> list[int]:
    return sorted(range(len(masks)), key=lambda v: (-masks[v].bit_count(), v))


def omega_ro(g: OrientedGraph, stats: SearchStats | None = None) -> tuple[int, tuple[int, ...]]:
    """Largest vertex set pairwise at weak distance <= 2 in ``g`` (maximum clique of the weak-2 graph)."""
    if g.n == 0:
        return 0, ()
    masks = weak2_masks(g)
    order = _partner_order(masks)
    rank = {v: i for i, v in enumerate(order)}
    best: list[int] = []

    def expand(chosen: list[int], cand: list[int]) -> None:
        nonlocal best
        if stats is not None:
            stats.tick()
        if len(chosen) > len(best):
            best = list(chosen)
        for idx, v in enumerate(cand):
            if len(chosen) + len(cand) - idx <= len(best):
                return
            chosen.append(v)
            expand(chosen, [w for w in cand[idx + 1:] if masks[v] >> w & 1])
            chosen.pop()

    expand([], order)
    return len(best), tuple(sorted(best, key=rank.__getitem__))


def omega_ao(g: OrientedGraph, stats: SearchStats | None = None) -> tuple[int, tuple[int, ...]]:
    """Largest vertex set inducing an oclique.

    A subgraph oclique stays an oclique when the missing arcs among its
    vertices are put back, so induced subgraphs suffice.  Candidates must
    be pairwise at weak distance <= 2 in ``g`` itself, which gives the
    relative clique bound; a chosen pair with no common arc-neighbour able
    to complete a 2-dipath among the remaining candidates kills the branch.
    """
    n = g.n
    if n == 0:
        return 0, ()
    masks = weak2_masks(g)
    out, inn, adj = g.out_masks, g.in_masks, g.adj
    order = _partner_order(masks)
    med = [[(out[u] & inn[v]) | (inn[u] & out[v]) for v in range(n)] for u in range(n)]
    best: list[int] = [order[0]]

    def search(chosen: list[int], s_mask: int, cand: list[int], open_pairs: list[tuple[int, int]]) -> None:
        nonlocal best
        if stats is not None:
            stats.tick()
        if not open_pairs and len(chosen) > len(best):
            best = list(chosen)
        if len(chosen) + len(cand) <= len(best):
            return
        c_mask = 0
        for w in cand:
            c_mask |= 1 << w
        for u, v in open_pairs:
            if not med[u][v] & c_mask:
                return
        for idx, v in enumerate(cand):
            if len(chosen) + len(cand) - idx <= len(best):
                return
            rest = cand[idx + 1:]
            rest_mask = 0
            for w in rest:
                rest_mask |= 1 << w
            # excluding cand[:idx] may already have killed an open pair
            if any(not med[a][b] & ((1 << v) | rest_mask) for a, b in open_pairs):
                return
            still = [(a, b) for a, b in open_pairs if not med[a][b] >> v & 1]
            for u in chosen:
                if not adj[u] >> v & 1 and not med[u][v] & s_mask:
                    still.append((u, v))
            chosen.append(v)
            search(chosen, s_mask | (1 << v), [w for w in rest if masks[v] >> w & 1], still)
            chosen.pop()

    search([], 0, order, [])
    return len(best), tuple(sorted(best))


# -- maxima over orientations ---------------------------------------------------------


def max_over_orientations(g: UndirectedGraph, quantity: Callable[[OrientedGraph], int],
                          stats: SearchStats | None = None,
                          first: int = 0, stop: int | None = None) -> tuple[int, int, OrientedGraph | None]:
    """Maximum of ``quantity`` over reversal-reduced orientations ``first..stop-1``.

    Returns ``(value, index, orientation)`` of the lowest-index maximiser.
    Every quantity used here is invariant under reversing all arcs, so the
    first edge is kept forward.
    """
    total = 1 << (g.m - 1) if g.m else 1
    stop = total if stop is None else min(stop, total)
    best = (-1, -1, None)
    for index in range(first, stop):
        if stats is not None:
            stats.tick()
            stats.check_time()
        o = orientation_from_index(g, index)
        value = quantity(o)
        if value > best[0]:
            best = (value, index, o)
    return best


def chi_o_undirected(g: UndirectedGraph, max_k: int = 7, stats: SearchStats | None = None):
    return max_over_orientations(g, lambda o: chi_o(o, max_k=max_k)[0], stats)


def omega_ao_undirected(g: UndirectedGraph, stats: SearchStats | None = None):
    return max_over_orientations(g, lambda o: omega_ao(o)[0], stats)


def omega_ro_undirected(g: UndirectedGraph, stats: SearchStats | None = None):
    return max_over_orientations(g, lambda o: omega_ro(o)[0], stats)


# -- combined record --------------------------------------------------------------------


@dataclass
class AnalysisResult:
    chi_o: int | None = None
    omega_ao: int | None = None
    omega_ro: int | None = None
    witnesses: list[Certificate] = field(default_factory=list)

    def sandwich_holds(self) -> bool:
        values = (self.omega_ao, self.omega_ro, self.chi_o)
        if None in values:
            return True
        return self.omega_ao <= self.omega_ro <= self.chi_o


def analyse(g: OrientedGraph, max_k: int | None = None) -> AnalysisResult:
    """All three numbers; χ_o scanned from 1 so the sandwich is an actual check."""
    result = AnalysisResult()
    result.omega_ao = omega_ao(g)[0]
    result.omega_ro = omega_ro(g)[0]
    try:
        k, cert = chi_o(g, max_k=g.n if max_k is None else max_k, start=1)
        result.chi_o = k
        result.witnesses.append(cert)
    except BudgetExceeded:
        pass
    return result


def max_signed_common_neighbourhood(g: OrientedGraph) -> tuple[int, tuple | None]:
    """Largest ``|N^a(u) ∩ N^b(v)|`` over arcs ``u -> v`` and sign pairs ``a, b``."""
    out, inn = g.out_masks, g.in_masks
    best, where = 0, None
    for u, v in sorted(g.arcs):
        for a, mu in (("+", out[u]), ("-", inn[u])):
            for b, mv in (("+", out[v]), ("-", inn[v])):
                size = (mu & mv).bit_count()
                if size > best:
                    best, where = size, (u, v, a, b)
    return best, where
