"""Named graphs: the minimal outerplanar oclique patterns, the two extremal
ocliques, the triangle-free diameter-2 planar families, the girth-4 targets
and directed cycles.

Every entry carries a list of claims ``(property, expected)``; the claim
checkers live in :mod:`oclique.verify.suites`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

from .graphs import Graph, OrientedGraph, UndirectedGraph, VertexMapping, underlying
from .structure import INF, plesnik_roles

__all__ = [
    "CatalogEntry",
    "minimal_outerplanar",
    "oclique_O7",
    "oclique_P15",
    "P15_HUB",
    "O7_HUB",
    "plesnik_star",
    "plesnik_k2n",
    "plesnik_c5blowup",
    "target_T3",
    "target_T6",
    "target_T11",
    "canonical_hom_rule",
    "directed_cycle",
    "entries",
    "get",
    "to_dot",
]


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    graph: Graph
    claims: tuple[tuple[str, object], ...] = ()
    labels: tuple[str, ...] = ()
    orientation: OrientedGraph | None = None
    note: str = ""

    def to_dict(self) -> dict:
        def plain(x):
            return "inf" if x == INF else x

        return {"id": self.id, "kind": self.graph.kind, "n": self.graph.n,
                "size": len(self.graph.edges if isinstance(self.graph, UndirectedGraph) else self.graph.arcs),
                "note": self.note, "claims": [[p, plain(v)] for p, v in self.claims]}


def _ugraph(n: int, edges) -> UndirectedGraph:
    return UndirectedGraph.from_edges(n, edges)


def _ograph(n: int, arcs) -> OrientedGraph:
    return OrientedGraph.from_arcs(n, arcs)


# -- extremal ocliques ------------------------------------------------------------

O7_LABELS = ("h", "t1", "t2", "t3", "b1", "b2", "b3")
O7_HUB = 0


def oclique_O7() -> OrientedGraph:
    """Hub h with two directed 3-paths: the top path feeds h, h feeds the bottom path."""
    h, t1, t2, t3, b1, b2, b3 = range(7)
    arcs = [(t1, t2), (t2, t3), (b1, b2), (b2, b3)]
    arcs += [(t, h) for t in (t1, t2, t3)] + [(h, b) for b in (b1, b2, b3)]
    return _ograph(7, arcs)


P15_LABELS = ("g", "cL", "lt1", "lt2", "lt3", "lb1", "lb2", "lb3",
              "cR", "rt1", "rt2", "rt3", "rb1", "rb2", "rb3")
P15_HUB = 0


def oclique_P15() -> OrientedGraph:
    """Two copies of the order-7 oclique joined through a hub g.

    Every vertex of the left copy points to g and g points to every vertex
    of the right copy.
    """
    hub = 0
    o7 = oclique_O7()
    arcs = []
    for offset in (1, 8):
        arcs += [(u + offset, v + offset) for u, v in o7.arcs]
    arcs += [(v, hub) for v in range(1, 8)] + [(hub, v) for v in range(8, 15)]
    return _ograph(15, arcs)


# -- the eleven minimal outerplanar patterns -------------------------------------------

_PATTERNS = {
    # id: (labels, edges, oclique orientation)
    "a": (("v",), [], []),
    "b": (("u", "v"), [(0, 1)], [(0, 1)]),
    "c": (("u0", "u1", "u2"), [(0, 1), (1, 2)], [(0, 1), (1, 2)]),
    "d": (("u0", "u1", "u2", "u3"), [(0, 1), (1, 2), (2, 3), (3, 0)],
          [(0, 1), (0, 3), (1, 2), (2, 3)]),
    "e": (("u0", "u1", "u2", "u3"), [(0, 1), (1, 2), (0, 2), (2, 3)],
          [(0, 1), (0, 2), (1, 2), (2, 3)]),
    "f": (("u0", "u1", "u2", "u3", "u4"), [(i, (i + 1) % 5) for i in range(5)],
          [(i, (i + 1) % 5) for i in range(5)]),
    "g": (("c", "u0", "u1", "u2", "u3"), [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)],
          [(0, 1), (0, 2), (1, 2), (3, 0), (3, 4), (4, 0)]),
    "h": (("c", "p", "u0", "u1", "u2"), [(0, 1), (0, 2), (0, 3), (0, 4), (2, 3), (3, 4)],
          [(0, 1), (2, 0), (2, 3), (3, 0), (3, 4), (4, 0)]),
    "i": (("t", "l", "r", "m", "bl", "br"),
          [(0, 1), (1, 3), (3, 2), (2, 0), (1, 4), (4, 3), (3, 5), (5, 2)],
          [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (3, 2), (3, 5), (4, 3)]),
    "j": (("c", "a0", "a1", "b0", "b1", "b2"),
          [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (3, 4), (4, 5)],
          [(0, 1), (0, 2), (1, 2), (3, 0), (3, 4), (4, 0), (4, 5), (5, 0)]),
}


@lru_cache(maxsize=None)
def _minimal_outerplanar() -> tuple[CatalogEntry, ...]:
    out = []
    for key, (labels, edges, arcs) in _PATTERNS.items():
        g = _ugraph(len(labels), edges)
        out.append(CatalogEntry(key, g, _pattern_claims(g), labels, _ograph(g.n, arcs)))
    o7 = oclique_O7()
    g = underlying(o7)
    out.append(CatalogEntry("k", g, _pattern_claims(g), O7_LABELS, o7))
    return tuple(out)


def _pattern_claims(g: UndirectedGraph) -> tuple[tuple[str, object], ...]:
    return (("order", g.n), ("size", g.m), ("outerplanar", True),
            ("orientable", True), ("edge_minimal", True))


def minimal_outerplanar() -> list[CatalogEntry]:
    """The eleven edge-minimal spanning patterns of outerplanar ocliques, ids ``a`` to ``k``.

    Each entry's ``orientation`` is an oclique orientation of its graph.
    """
    return list(_minimal_outerplanar())


# -- triangle-free planar diameter-2 families --------------------------------------------


def _positive(**params: int) -> None:
    for name, value in params.items():
        if not isinstance(value, int) or value < 1:
            raise ValueError(f"{name} must be a positive integer, got {value!r}")


def plesnik_star(n: int) -> UndirectedGraph:
    """K_{1,n} with centre 0."""
    _positive(n=n)
    return _ugraph(n + 1, [(0, i) for i in range(1, n + 1)])


def plesnik_k2n(n: int) -> UndirectedGraph:
    """K_{2,n} with poles 0 and 1."""
    _positive(n=n)
    return _ugraph(n + 2, [(p, i) for p in (0, 1) for i in range(2, n + 2)])


def plesnik_c5blowup(p: int, q: int) -> UndirectedGraph:
    """a=0, edge b=1 -- c=2, then p vertices joined to a and b, then q joined to a and c."""
    _positive(p=p, q=q)
    xs = range(3, 3 + p)
    ys = range(3 + p, 3 + p + q)
    edges = [(1, 2)] + [(0, x) for x in xs] + [(1, x) for x in xs]
    edges += [(0, y) for y in ys] + [(2, y) for y in ys]
    return _ugraph(3 + p + q, edges)


# -- homomorphism targets ----------------------------------------------------------------

SIGNS = ("++", "+-", "-+", "--")


def target_T3() -> OrientedGraph:
    """The 2-dipath s=0 -> w=1 -> t=2."""
    return _ograph(3, [(0, 1), (1, 2)])


def _signed(apex: int, vertex: int, sign: str) -> tuple[int, int]:
    return (apex, vertex) if sign == "+" else (vertex, apex)


def target_T6() -> OrientedGraph:
    """Poles u=0, v=1 and m_s = 2 + SIGNS.index(s); u -> m_s iff s[0] is '+', v -> m_s iff s[1] is '+'."""
    arcs = []
    for i, s in enumerate(SIGNS):
        m = 2 + i
        arcs += [_signed(0, m, s[0]), _signed(1, m, s[1])]
    return _ograph(6, arcs)


def target_T11() -> OrientedGraph:
    """Apex a=0, arc b=1 -> c=2, left vertices l_s = 3 + i (signs towards a, b),
    right vertices r_s = 7 + i (signs towards a, c)."""
    arcs = [(1, 2)]
    for i, s in enumerate(SIGNS):
        left, right = 3 + i, 7 + i
        arcs += [_signed(0, left, s[0]), _signed(1, left, s[1])]
        arcs += [_signed(0, right, s[0]), _signed(2, right, s[1])]
    return _ograph(11, arcs)


def _sign(g: OrientedGraph, centre: int, x: int) -> str:
    return "+" if g.has_arc(centre, x) else "-"


def canonical_hom_rule(g: OrientedGraph) -> tuple[VertexMapping, OrientedGraph]:
    """Closed-form homomorphism of an oriented family member onto its target.

    Stars go to the 2-dipath by the direction of each leaf's edge; K_{2,n}
    goes to T6 by the sign pair towards the poles; C5 blow-ups go to T11,
    with b and c swapped first if the edge between them points c -> b.
    """
    cls, roles = plesnik_roles(underlying(g))
    image = [0] * g.n
    if cls.family == "star":
        centre = roles["center"]
        target = target_T3()
        image[centre] = 1
        for x in g.neighbors(centre):
            image[x] = 2 if g.has_arc(centre, x) else 0
    elif cls.family == "k2n":
        u, v = roles["poles"]
        target = target_T6()
        image[u], image[v] = 0, 1
        for x in set(g.neighbors(u)):
            image[x] = 2 + SIGNS.index(_sign(g, u, x) + _sign(g, v, x))
    elif cls.family == "c5blowup":
        a, b, c = roles["a"], roles["b"], roles["c"]
        if g.has_arc(c, b):
            b, c = c, b
        target = target_T11()
        image[a], image[b], image[c] = 0, 1, 2
        for x in g.neighbors(a):
            if g.adjacent(x, b):
                image[x] = 3 + SIGNS.index(_sign(g, a, x) + _sign(g, b, x))
            else:
                image[x] = 7 + SIGNS.index(_sign(g, a, x) + _sign(g, c, x))
    else:
        raise ValueError("underlying graph is not a star, K_{2,n} or C5 blow-up")
    return VertexMapping("homomorphism", tuple(image)), target


def directed_cycle(k: int) -> OrientedGraph:
    if not isinstance(k, int) or k < 3:
        raise ValueError(f"directed cycles need k >= 3, got {k!r}")
    return _ograph(k, [(i, (i + 1) % k) for i in range(k)])


# -- registry ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _fixed_entries() -> dict[str, CatalogEntry]:
    table = {e.id: e for e in _minimal_outerplanar()}
    o7, p15 = oclique_O7(), oclique_P15()
    table["O7"] = CatalogEntry("O7", o7, (
        ("is_oclique", True), ("chi_o", 7), ("order", 7), ("underlying_outerplanar", True),
        ("hub_in_degree", 3), ("hub_out_degree", 3)), O7_LABELS, note="outerplanar oclique of order 7")
    table["P15"] = CatalogEntry("P15", p15, (
        ("is_oclique", True), ("order", 15), ("size", 34), ("underlying_planar", True),
        ("domination_number", 1), ("hub_in_degree", 7), ("hub_out_degree", 7)), P15_LABELS,
        note="planar oclique of order 15")
    table["T3"] = CatalogEntry("T3", target_T3(), (
        ("is_oclique", True), ("omega_ao", 3), ("underlying_girth", INF)), ("s", "w", "t"))
    table["T6"] = CatalogEntry("T6", target_T6(), (
        ("is_oclique", True), ("omega_ao", 6), ("underlying_girth", 4)),
        ("u", "v") + tuple(f"m{s}" for s in SIGNS))
    table["T11"] = CatalogEntry("T11", target_T11(), (
        ("is_oclique", False), ("omega_ao", 6), ("underlying_girth", 4)),
        ("a", "b", "c") + tuple(f"l{s}" for s in SIGNS) + tuple(f"r{s}" for s in SIGNS))
    table["DC5"] = CatalogEntry("DC5", directed_cycle(5), (
        ("is_oclique", True), ("chi_o", 5), ("omega_ao", 5), ("underlying_girth", 5)))
    table["DC6"] = CatalogEntry("DC6", directed_cycle(6), (("is_oclique", False),))
    return table


def entries() -> list[CatalogEntry]:
    return list(_fixed_entries().values())


_PARAM = re.compile(r"^(star|k2n|c5blowup|dicycle)\((\d+)(?:,(\d+))?\)$")


def get(name: str) -> CatalogEntry:
    """Look up a fixed id, or build ``star(n)``, ``k2n(n)``, ``c5blowup(p,q)`` or ``dicycle(k)``."""
    table = _fixed_entries()
    if name in table:
        return table[name]
    match = _PARAM.match(name.replace(" ", ""))
    if not match:
        raise KeyError(f"unknown catalog id {name!r}")
    family, first, second = match.group(1), int(match.group(2)), match.group(3)
    if (family == "c5blowup") != (second is not None):
        raise KeyError(f"wrong number of parameters in {name!r}")
    if family == "star":
        g = plesnik_star(first)
    elif family == "k2n":
        g = plesnik_k2n(first)
    elif family == "c5blowup":
        g = plesnik_c5blowup(first, int(second))
    else:
        g = directed_cycle(first)
    return CatalogEntry(name, g)


def to_dot(g: Graph, labels: tuple[str, ...] = (), name: str = "G") -> str:
    directed = isinstance(g, OrientedGraph)
    joiner = " -> " if directed else " -- "
    lines = [f'{"digraph" if directed else "graph"} "{name}" {{']
    for v in range(g.n):
        label = labels[v] if v < len(labels) else str(v)
        lines.append(f'  {v} [label="{label}"];')
    pairs = g.sorted_arcs if directed else g.sorted_edges
    lines += [f"  {u}{joiner}{v};" for u, v in pairs]
    lines.append("}")
    return "\n".join(lines) + "\n"
