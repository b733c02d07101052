"""Graph and oriented-graph values, OGRAPH parsing, embeddings and canonical forms.

Vertices are always the dense integers ``0..n-1``.  Both graph types are
immutable; adjacency is cached as integer bitmasks, which is what every
search in the package works on.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Literal, Sequence, Union

from .errors import GraphFormatError, LimitExceeded

__all__ = [
    "UndirectedGraph",
    "OrientedGraph",
    "Graph",
    "VertexMapping",
    "iter_bits",
    "parse_graph",
    "serialize",
    "underlying",
    "orientations",
    "orientation_from_index",
    "subgraph_embedding_map",
    "subgraph_embedding",
    "isomorphic",
    "induced",
    "canonical_form",
    "canonical_labeling",
    "relabel",
    "CANONICAL_LIMIT",
]

CANONICAL_LIMIT = 16


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class UndirectedGraph:
    """Simple graph on ``0..n-1``; ``edges`` holds pairs ``(u, v)`` with ``u < v``."""

    n: int
    edges: frozenset[tuple[int, int]]

    kind = "U"

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphFormatError(f"negative vertex count {self.n}")
        normalized = set()
        for u, v in self.edges:
            if u == v:
                raise GraphFormatError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphFormatError(f"edge {u}-{v} out of range for n={self.n}")
            normalized.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "UndirectedGraph":
        edges = list(edges)
        seen = set()
        for u, v in edges:
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphFormatError(f"duplicate edge {u}-{v}")
            seen.add(key)
        return cls(n, frozenset(edges))

    @cached_property
    def adj(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def sorted_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(self.n)), default=0)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = frontier = 1
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << self.n) - 1

    def without_edge(self, edge: tuple[int, int]) -> "UndirectedGraph":
        key = (min(edge), max(edge))
        return UndirectedGraph(self.n, self.edges - {key})

    def with_edge(self, edge: tuple[int, int]) -> "UndirectedGraph":
        key = (min(edge), max(edge))
        return UndirectedGraph(self.n, self.edges | {key})


@dataclass(frozen=True)
class OrientedGraph:
    """Digraph on ``0..n-1`` without loops and without opposite arc pairs."""

    n: int
    arcs: frozenset[tuple[int, int]]

    kind = "D"

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphFormatError(f"negative vertex count {self.n}")
        arcs = frozenset(self.arcs)
        for u, v in arcs:
            if u == v:
                raise GraphFormatError(f"loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphFormatError(f"arc {u}->{v} out of range for n={self.n}")
            if (v, u) in arcs:
                raise GraphFormatError(f"opposite arcs {u}->{v} and {v}->{u}")
        object.__setattr__(self, "arcs", arcs)

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "OrientedGraph":
        arcs = list(arcs)
        if len(set(arcs)) != len(arcs):
            raise GraphFormatError("duplicate arc")
        return cls(n, frozenset(arcs))

    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.arcs:
            masks[u] |= 1 << v
        return tuple(masks)

    @cached_property
    def in_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.arcs:
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def adj(self) -> tuple[int, ...]:
        return tuple(o | i for o, i in zip(self.out_masks, self.in_masks))

    @property
    def m(self) -> int:
        return len(self.arcs)

    @cached_property
    def sorted_arcs(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.arcs))

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_masks[u] >> v & 1)

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def out_neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.out_masks[v]))

    def in_neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.in_masks[v]))

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def out_degree(self, v: int) -> int:
        return self.out_masks[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self.in_masks[v].bit_count()

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def reverse(self) -> "OrientedGraph":
        return OrientedGraph(self.n, frozenset((v, u) for u, v in self.arcs))

    def without_arc(self, arc: tuple[int, int]) -> "OrientedGraph":
        return OrientedGraph(self.n, self.arcs - {arc})

    def with_arc(self, arc: tuple[int, int]) -> "OrientedGraph":
        return OrientedGraph(self.n, self.arcs | {arc})


Graph = Union[UndirectedGraph, OrientedGraph]


@dataclass(frozen=True)
class VertexMapping:
    """A vertex function ``image[source_vertex] -> target_vertex`` with a declared kind."""

    kind: Literal["homomorphism", "embedding", "coloring"]
    image: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind not in ("homomorphism", "embedding", "coloring"):
            raise ValueError(f"unknown mapping kind {self.kind!r}")
        object.__setattr__(self, "image", tuple(self.image))

    def is_valid(self, source: Graph, target: Graph | None = None) -> bool:
        """Re-check the mapping's contract against ``source`` (and ``target``)."""
        img = self.image
        if len(img) != source.n:
            return False
        if self.kind == "coloring":
            from .analysis import is_oriented_coloring

            return isinstance(source, OrientedGraph) and is_oriented_coloring(
                source, img, max(img, default=-1) + 1)
        if target is None or type(source) is not type(target):
            return False
        if any(not 0 <= t < target.n for t in img):
            return False
        if self.kind == "embedding":
            if len(set(img)) != len(img):
                return False
            if isinstance(source, UndirectedGraph):
                return all(target.adjacent(img[u], img[v]) for u, v in source.edges)
            return all(target.has_arc(img[u], img[v]) for u, v in source.arcs)
        if not isinstance(source, OrientedGraph):
            return all(target.adjacent(img[u], img[v]) for u, v in source.edges)
        return all(target.has_arc(img[u], img[v]) for u, v in source.arcs)


# -- OGRAPH text format --------------------------------------------------------

_HEADER = re.compile(r"^([UD])\s+(\d+)$")
_PAIR = re.compile(r"^(\d+)\s+(\d+)$")


_EXPECT = {"U": "undirected", "D": "oriented", None: "any"}


def parse_graph(text: bytes | str, expect: str | None = "any") -> Graph:
    """Parse OGRAPH text: a ``U <n>`` / ``D <n>`` header, then one ``u v`` pair per line.

    ``expect`` is ``"undirected"``/``"U"``, ``"oriented"``/``"D"`` or ``"any"``.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise GraphFormatError(f"non-ASCII input: {exc}") from None
    header = None
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].rstrip("\r").strip()
        if not line:
            continue
        if header is None:
            found = _HEADER.match(line)
            if not found:
                raise GraphFormatError(f"line {lineno}: malformed header {line!r}")
            header = (found.group(1), int(found.group(2)))
            continue
        found = _PAIR.match(line)
        if not found:
            raise GraphFormatError(f"line {lineno}: expected '<u> <v>', got {line!r}")
        u, v = int(found.group(1)), int(found.group(2))
        if u >= header[1] or v >= header[1]:
            raise GraphFormatError(f"line {lineno}: vertex index >= n={header[1]}")
        pairs.append((u, v))
    if header is None:
        raise GraphFormatError("missing header")
    kind, n = header
    expect = _EXPECT.get(expect, expect)
    if expect not in ("undirected", "oriented", "any"):
        raise ValueError(f"unknown expected kind {expect!r}")
    if expect == "undirected" and kind != "U":
        raise GraphFormatError("expected an undirected (U) graph")
    if expect == "oriented" and kind != "D":
        raise GraphFormatError("expected an oriented (D) graph")
    if kind == "U":
        return UndirectedGraph.from_edges(n, pairs)
    return OrientedGraph.from_arcs(n, pairs)


def serialize(g: Graph) -> str:
    """OGRAPH text with sorted pairs, LF-terminated."""
    pairs = g.sorted_edges if isinstance(g, UndirectedGraph) else g.sorted_arcs
    lines = [f"{g.kind} {g.n}"] + [f"{u} {v}" for u, v in pairs]
    return "\n".join(lines) + "\n"


# -- orientations --------------------------------------------------------------


def underlying(g: OrientedGraph) -> UndirectedGraph:
    return UndirectedGraph(g.n, frozenset((min(a), max(a)) for a in g.arcs))


def orientation_from_index(g: UndirectedGraph, index: int) -> OrientedGraph:
    """Orientation number ``index`` of ``g``.

    Edges are taken in sorted order; the first edge corresponds to the most
    significant of the ``m`` direction bits.  A ``0`` bit keeps ``u -> v``
    (``u < v``), a ``1`` bit reverses it.  Indices below ``2**(m-1)`` are
    exactly the orientations with the first edge forward.
    """
    edges = g.sorted_edges
    m = len(edges)
    if not 0 <= index < (1 << m):
        raise ValueError(f"orientation index {index} out of range for m={m}")
    arcs = []
    for j, (u, v) in enumerate(edges):
        if index >> (m - 1 - j) & 1:
            arcs.append((v, u))
        else:
            arcs.append((u, v))
    return OrientedGraph(g.n, frozenset(arcs))


def orientations(g: UndirectedGraph, reduce_reversal: bool = False) -> Iterator[OrientedGraph]:
    """All ``2**m`` orientations in index order (``2**(m-1)`` with reversal reduction)."""
    m = g.m
    count = 1 << (m - 1) if reduce_reversal and m >= 1 else 1 << m
    for index in range(count):
        yield orientation_from_index(g, index)


# -- embeddings ----------------------------------------------------------------


def _masks(g: Graph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if isinstance(g, OrientedGraph):
        return g.out_masks, g.in_masks
    return g.adj, g.adj


def _search_order(n: int, out_m: Sequence[int], in_m: Sequence[int]) -> list[int]:
    # descending degree; ties go to vertices with more already-ordered neighbours
    adj = [o | i for o, i in zip(out_m, in_m)]
    remaining = set(range(n))
    order: list[int] = []
    placed = 0
    while remaining:
        v = max(remaining, key=lambda x: (adj[x].bit_count(), (adj[x] & placed).bit_count(), -x))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return order


def subgraph_embedding_map(h: Graph, g: Graph, spanning: bool = False,
                           induced: bool = False) -> tuple[int, ...] | None:
    """Injective map sending every edge/arc of ``h`` onto one of ``g``, or ``None``.

    With ``induced=True`` non-edges must also map to non-edges.
    """
    if type(h) is not type(g):
        raise TypeError("subgraph_embedding needs two graphs of the same kind")
    if spanning and h.n != g.n:
        raise ValueError(f"spanning embedding needs equal orders, got {h.n} and {g.n}")
    if h.n > g.n or h.m > g.m:
        return None
    h_out, h_in = _masks(h)
    g_out, g_in = _masks(g)
    oriented = isinstance(h, OrientedGraph)
    order = _search_order(h.n, h_out, h_in)

    # per position: (earlier position, mask selector) constraints
    cons: list[list[tuple[int, int]]] = []
    non_cons: list[list[int]] = []
    for i, v in enumerate(order):
        c = []
        nc = []
        for j in range(i):
            w = order[j]
            if oriented:
                if h_out[w] >> v & 1:
                    c.append((j, 0))  # w -> v: need image in out(img w)
                elif h_in[w] >> v & 1:
                    c.append((j, 1))  # v -> w: need image in in(img w)
                else:
                    nc.append(j)
            else:
                if h_out[w] >> v & 1:
                    c.append((j, 0))
                else:
                    nc.append(j)
        cons.append(c)
        non_cons.append(nc)

    full = (1 << g.n) - 1
    allowed = []
    for v in order:
        mask = 0
        dout, din = h_out[v].bit_count(), h_in[v].bit_count()
        for t in range(g.n):
            if oriented:
                if g_out[t].bit_count() >= dout and g_in[t].bit_count() >= din:
                    mask |= 1 << t
            elif g_out[t].bit_count() >= dout:
                mask |= 1 << t
        allowed.append(mask)
    g_adj = [o | i for o, i in zip(g_out, g_in)]

    img = [0] * h.n
    k = h.n

    def extend(i: int, used: int) -> bool:
        if i == k:
            return True
        cand = allowed[i] & ~used
        for j, sel in cons[i]:
            cand &= g_out[img[j]] if sel == 0 else g_in[img[j]]
            if not cand:
                return False
        if induced:
            for j in non_cons[i]:
                cand &= ~g_adj[img[j]] & full
        for t in iter_bits(cand):
            img[i] = t
            if extend(i + 1, used | (1 << t)):
                return True
        return False

    if not extend(0, 0):
        return None
    image = [0] * h.n
    for i, v in enumerate(order):
        image[v] = img[i]
    return tuple(image)


def subgraph_embedding(h: Graph, g: Graph, spanning: bool = False):
    """Embedding certificate of ``h`` into ``g`` or ``None`` when none exists."""
    from .certificates import SpanningEmbedding

    image = subgraph_embedding_map(h, g, spanning=spanning)
    if image is None:
        return None
    return SpanningEmbedding(VertexMapping("embedding", image), spanning=spanning)


def isomorphic(g: Graph, h: Graph) -> bool:
    """Isomorphism test by spanning embedding.

    With equal vertex and edge counts an injective edge-preserving map is a
    bijection on edges too, so one direction already certifies both.
    """
    if type(g) is not type(h):
        raise TypeError("isomorphic needs two graphs of the same kind")
    if g.n != h.n or g.m != h.m:
        return False
    if sorted(g.degree(v) for v in range(g.n)) != sorted(h.degree(v) for v in range(h.n)):
        return False
    return subgraph_embedding_map(g, h, spanning=True) is not None


def induced(g: OrientedGraph, subset: Iterable[int]) -> OrientedGraph:
    """Sub-digraph induced by ``subset``, relabelled ``0..k-1`` in ascending order."""
    verts = sorted(set(subset))
    for v in verts:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    index = {v: i for i, v in enumerate(verts)}
    arcs = frozenset((index[u], index[v]) for u, v in g.arcs if u in index and v in index)
    return OrientedGraph(len(verts), arcs)


# -- canonical forms -------------------------------------------------------------


def _refine(colors: list[int], out_l: list[list[int]], in_l: list[list[int]]) -> list[int]:
    ncolors = len(set(colors))
    while True:
        sig = [
            (colors[v], tuple(sorted(colors[w] for w in out_l[v])), tuple(sorted(colors[w] for w in in_l[v])))
            for v in range(len(colors))
        ]
        rank = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [rank[s] for s in sig]
        if len(rank) == ncolors:
            return new
        colors, ncolors = new, len(rank)


def canonical_labeling(g: Graph) -> tuple[bytes, tuple[int, ...]]:
    """Return ``(form, position)`` where ``position[v]`` is v's canonical index.

    Individualisation-refinement: colour refinement on in/out neighbour
    colours, then branch over the first non-singleton cell.  The form is the
    lexicographically smallest adjacency bit string over all discrete leaves
    of that (isomorphism-invariant) search tree.  Vertices in a target cell
    that are twins of an already-tried vertex are skipped, since swapping
    twins is an automorphism preserving the current colouring.
    """
    n = g.n
    if n > CANONICAL_LIMIT:
        raise LimitExceeded(f"canonical_form supports n <= {CANONICAL_LIMIT}, got {n}")
    out_m, in_m = _masks(g)
    oriented = isinstance(g, OrientedGraph)
    out_l = [list(iter_bits(m)) for m in out_m]
    in_l = [list(iter_bits(m)) for m in in_m]

    def code(pos: list[int]) -> int:
        inv = [0] * n
        for v, p in enumerate(pos):
            inv[p] = v
        value = 0
        if oriented:
            for i in range(n):
                row = out_m[inv[i]]
                for j in range(n):
                    value = (value << 1) | (row >> inv[j] & 1)
        else:
            for i in range(n):
                row = out_m[inv[i]]
                for j in range(i + 1, n):
                    value = (value << 1) | (row >> inv[j] & 1)
        return value

    def twins(a: int, b: int) -> bool:
        mask = ~((1 << a) | (1 << b))
        return (out_m[a] & mask) == (out_m[b] & mask) and (in_m[a] & mask) == (in_m[b] & mask)

    best: list = [None, None]

    def search(colors: list[int]) -> None:
        k = max(colors, default=-1) + 1
        if k == n:
            c = code(colors)
            if best[0] is None or c < best[0]:
                best[0], best[1] = c, tuple(colors)
            return
        sizes = [0] * k
        for c in colors:
            sizes[c] += 1
        target = next(c for c in range(k) if sizes[c] > 1)
        cell = [v for v in range(n) if colors[v] == target]
        tried: list[int] = []
        for v in cell:
            if any(twins(v, u) for u in tried):
                continue
            tried.append(v)
            keyed = [(2 * colors[w] + (0 if w == v else 1)) if colors[w] == target else 2 * colors[w]
                     for w in range(n)]
            rank = {c: i for i, c in enumerate(sorted(set(keyed)))}
            search(_refine([rank[c] for c in keyed], out_l, in_l))

    search(_refine([0] * n, out_l, in_l))
    bits = n * n if oriented else n * (n - 1) // 2
    value = best[0] if best[0] is not None else 0
    body = value.to_bytes((bits + 7) // 8, "big") if bits else b""
    form = f"{g.kind}{n}:".encode() + body
    return form, (best[1] if best[1] is not None else ())


def canonical_form(g: Graph) -> bytes:
    """Byte string equal for two graphs exactly when they are isomorphic."""
    return canonical_labeling(g)[0]


def relabel(g: Graph, position: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed to ``position[v]``."""
    if sorted(position) != list(range(g.n)):
        raise ValueError("position must be a permutation of the vertices")
    if isinstance(g, UndirectedGraph):
        return UndirectedGraph(g.n, frozenset((position[u], position[v]) for u, v in g.edges))
    return OrientedGraph(g.n, frozenset((position[u], position[v]) for u, v in g.arcs))
