"""Exhaustive verification suites.

Each suite returns a :class:`VerificationReport`.  A failing report always
carries at least one counterexample with a graph and, where one exists, a
certificate that can be re-checked on its own.  Running out of
``budget_seconds`` gives the verdict ``budget-exceeded``, never a pass.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from ..analysis import chi_o, is_oclique, omega_ao, omega_ro, weak2_masks
from ..budget import SearchStats
from ..catalog import (
    P15_HUB,
    CatalogEntry,
    canonical_hom_rule,
    directed_cycle,
    entries,
    minimal_outerplanar,
    oclique_O7,
    oclique_P15,
    plesnik_c5blowup,
    plesnik_k2n,
    plesnik_star,
    target_T3,
    target_T6,
)
from ..certificates import Certificate, Exhaustion, Homomorphism, OrientationWitness, graph_to_dict
from ..errors import BudgetExceeded
from ..graphs import (
    Graph,
    OrientedGraph,
    UndirectedGraph,
    canonical_form,
    isomorphic,
    orientation_from_index,
    orientations,
    subgraph_embedding,
    underlying,
)
from ..orientability import edge_minimal, orient_as_oclique, outerplanar_oclique_decision
from ..structure import (
    INF,
    NOT_IN_FAMILIES,
    diameter,
    domination_number,
    girth,
    is_outerplanar,
    is_planar,
    is_triangle_free,
    plesnik_classify,
)
from .enumerate import enumerate_graphs

__all__ = [
    "Finding",
    "VerificationReport",
    "P15_BREAK_COUNTS",
    "suite_catalog",
    "suite_outerplanar_characterization",
    "suite_girth_bounds",
    "suite_plesnik",
    "suite_targets",
    "suite_bounds",
    "suite_p15_rigidity",
    "SUITES",
    "run_suite",
    "run_all",
]


@dataclass
class Finding:
    description: str
    graph: Graph | None = None
    certificate: Certificate | None = None
    details: dict = field(default_factory=dict)

    def sort_key(self) -> tuple:
        form = canonical_form(self.graph) if self.graph is not None and self.graph.n <= 16 else b""
        return (form, self.description)

    def to_dict(self) -> dict:
        out: dict = {"description": self.description}
        if self.graph is not None:
            out["graph"] = graph_to_dict(self.graph)
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_dict()
        out.update(self.details)
        return out


@dataclass
class VerificationReport:
    suite: str
    claim: str
    verdict: str = "pass"
    counters: dict = field(default_factory=dict)
    witnesses: list[Finding] = field(default_factory=list)
    counterexamples: list[Finding] = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self, witnesses: bool = True) -> dict:
        out = {"suite": self.suite, "claim": self.claim, "verdict": self.verdict,
               "counters": dict(self.counters), "elapsed_ms": self.elapsed_ms,
               "counterexamples": [f.to_dict() for f in self.counterexamples]}
        if witnesses:
            out["witnesses"] = [f.to_dict() for f in self.witnesses]
        return out


class _Run:
    """Collects counters and findings; owns the deadline."""

    def __init__(self, suite: str, claim: str, budget_seconds: float | None):
        self.report = VerificationReport(suite, claim)
        self.started = time.perf_counter()
        self.deadline = None if budget_seconds is None else time.monotonic() + budget_seconds
        self.out_of_budget = False

    def count(self, key: str, k: int = 1) -> None:
        self.report.counters[key] = self.report.counters.get(key, 0) + k

    def check_budget(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded(f"{self.report.suite}: budget exhausted", progress=dict(self.report.counters))

    def remaining(self) -> float | None:
        return None if self.deadline is None else max(0.0, self.deadline - time.monotonic())

    def fail(self, finding: Finding) -> None:
        self.report.counterexamples.append(finding)

    def witness(self, finding: Finding) -> None:
        self.report.witnesses.append(finding)

    def pmap(self, fn: Callable, items: Iterable, workers: int = 1) -> Iterator:
        """``map(fn, items)`` in order, over a process pool when ``workers > 1``."""
        items = list(items)
        if workers <= 1:
            for item in items:
                self.check_budget()
                yield fn(item)
            return
        pool = ProcessPoolExecutor(max_workers=workers)
        try:
            for result in pool.map(fn, items, chunksize=max(1, len(items) // (8 * workers))):
                self.check_budget()
                yield result
        finally:
            pool.shutdown(wait=True, cancel_futures=True)

    def finish(self) -> VerificationReport:
        r = self.report
        r.counterexamples.sort(key=Finding.sort_key)
        if r.counterexamples:
            r.verdict = "fail"
        elif self.out_of_budget:
            r.verdict = "budget-exceeded"
        else:
            r.verdict = "pass"
        r.elapsed_ms = int((time.perf_counter() - self.started) * 1000)
        return r


def _guarded(body: Callable[[_Run], None], run: _Run) -> VerificationReport:
    try:
        body(run)
    except BudgetExceeded:
        run.out_of_budget = True
    return run.finish()


# -- catalog ---------------------------------------------------------------------------


def _claim_value(entry: CatalogEntry, prop: str, stats: SearchStats):
    g = entry.graph
    base = underlying(g) if isinstance(g, OrientedGraph) else g
    if prop == "order":
        return g.n
    if prop == "size":
        return len(g.arcs) if isinstance(g, OrientedGraph) else g.m
    if prop in ("outerplanar", "underlying_outerplanar"):
        return is_outerplanar(base)
    if prop in ("planar", "underlying_planar"):
        return is_planar(base)
    if prop == "underlying_girth":
        return girth(base)
    if prop == "domination_number":
        return domination_number(base)[0]
    if prop == "orientable":
        return isinstance(orient_as_oclique(base, stats), OrientationWitness)
    if prop == "edge_minimal":
        return edge_minimal(base, stats)
    if prop == "is_oclique":
        return is_oclique(g)
    if prop == "chi_o":
        return chi_o(g, max_k=7, start=1, stats=stats)[0]
    if prop == "omega_ao":
        return omega_ao(g, stats)[0]
    if prop == "hub_in_degree":
        return g.in_degree(P15_HUB)
    if prop == "hub_out_degree":
        return g.out_degree(P15_HUB)
    raise KeyError(f"no checker for claim {prop!r}")


def suite_catalog(catalog: list[CatalogEntry] | None = None, budget_seconds: float | None = None,
                  workers: int = 1) -> VerificationReport:
    """Every catalog claim, plus the structural facts about the eleven patterns.

    Hub degrees refer to vertex 0, which is the hub in both extremal ocliques.
    """
    run = _Run("catalog", "catalog claims hold; the eleven patterns are distinct outerplanar "
                          "edge-minimal oclique spanning subgraphs", budget_seconds)
    items = list(entries() if catalog is None else catalog)

    def body(run: _Run) -> None:
        stats = SearchStats(deadline=run.deadline)
        for entry in items:
            for prop, expected in entry.claims:
                run.check_budget()
                run.count("claims_checked")
                try:
                    observed = _claim_value(entry, prop, stats)
                except BudgetExceeded as exc:
                    if exc.lower_bound is not None and exc.lower_bound > 7 and prop == "chi_o":
                        observed = f">{exc.lower_bound - 1}"
                    else:
                        raise
                if observed != expected:
                    run.fail(Finding(f"{entry.id}: {prop} is {observed!r}, expected {expected!r}",
                                     entry.graph, details={"entry": entry.id, "property": prop,
                                                           "expected": _plain(expected),
                                                           "observed": _plain(observed)}))
            if entry.orientation is not None:
                cert = OrientationWitness(entry.orientation)
                if not cert.check(entry.graph):
                    run.fail(Finding(f"{entry.id}: stored orientation is not an oclique orientation",
                                     entry.graph, cert))
        patterns = [e for e in items if e.id in "abcdefghijk" and len(e.id) == 1]
        for x, y in itertools.combinations(patterns, 2):
            run.count("isomorphism_tests")
            if isomorphic(x.graph, y.graph):
                run.fail(Finding(f"patterns {x.id} and {y.id} are isomorphic", x.graph,
                                 details={"other": graph_to_dict(y.graph)}))
        o7 = oclique_O7()
        k, cert = chi_o(o7, max_k=7, start=1)
        if cert.check(o7):
            run.witness(Finding("seven-colouring of the order-7 oclique", o7, cert))
        else:
            run.fail(Finding("chi_o witness does not re-check", o7, cert))
        run.count("nodes_explored", stats.nodes)

    return _guarded(body, run)


def _plain(x):
    return "inf" if x == INF else x


# -- outerplanar characterization ----------------------------------------------------------


def _characterize(args) -> dict:
    g, patterns, seconds = args
    stats = SearchStats.with_budget(seconds)
    brute = orient_as_oclique(g, stats)
    fast = outerplanar_oclique_decision(g, patterns)
    return {"graph": g, "brute": brute, "fast": fast, "nodes": stats.nodes}


def _contains_o7(o: OrientedGraph, o7: OrientedGraph, o7_rev: OrientedGraph) -> bool:
    return subgraph_embedding(o7, o, spanning=True) is not None or \
        subgraph_embedding(o7_rev, o, spanning=True) is not None


def suite_outerplanar_characterization(max_n: int = 7, patterns: list[CatalogEntry] | None = None,
                                       budget_seconds: float | None = None,
                                       workers: int = 1) -> VerificationReport:
    run = _Run("outerplanar_characterization",
               "a connected outerplanar graph is orientable as an oclique iff it has a spanning "
               "subgraph from the pattern list; at order 7 every oclique orientation contains "
               "the order-7 oclique", budget_seconds)
    pats = minimal_outerplanar() if patterns is None else list(patterns)

    def body(run: _Run) -> None:
        graphs = [g for n in range(1, max_n + 1) for g in enumerate_graphs(n, "outerplanar")
                  if g.n == 1 or g.is_connected()]
        run.count("graphs_enumerated", len(graphs))
        by_order: dict[int, int] = {}
        orientable7: list[UndirectedGraph] = []
        for res in run.pmap(_characterize, [(g, pats, run.remaining()) for g in graphs], workers):
            g, brute, fast = res["graph"], res["brute"], res["fast"]
            run.count("nodes_explored", res["nodes"])
            yes = isinstance(brute, OrientationWitness)
            if yes and not brute.check(g):
                run.fail(Finding("orientation search returned a bad witness", g, brute))
            if fast.verdict and not fast.certificate.check(g):
                run.fail(Finding("pattern route returned a bad witness", g, fast.certificate))
            if yes != fast.verdict:
                cert = brute if yes else fast.certificate
                run.fail(Finding(f"pattern route says {fast.verdict}, orientation search says {yes}",
                                 g, cert, {"order": g.n}))
            if yes:
                by_order[g.n] = by_order.get(g.n, 0) + 1
                if g.n == 7:
                    orientable7.append(g)
        run.report.counters["orientable_by_order"] = {str(k): v for k, v in sorted(by_order.items())}
        if max_n >= 7:
            o7 = oclique_O7()
            o7_rev = o7.reverse()
            base = underlying(o7)
            for g in orientable7:
                run.check_budget()
                if subgraph_embedding(base, g, spanning=True) is None:
                    run.fail(Finding("orientable order-7 graph without the order-7 pattern", g))
                    continue
                for o in orientations(g, reduce_reversal=True):
                    run.count("orientations_tested")
                    if is_oclique(o):
                        run.count("oclique_orientations")
                        if not _contains_o7(o, o7, o7_rev):
                            run.fail(Finding("oclique orientation at order 7 missing the order-7 oclique",
                                             o, OrientationWitness(o)))
            run.report.counters["order7_orientable_classes"] = len(orientable7)

    return _guarded(body, run)


# -- girth bounds ----------------------------------------------------------------------------

_GIRTH_CASES = (
    # (girth lower bound, largest oclique order, tightness witness)
    (4, 6, target_T6),
    (5, 5, lambda: directed_cycle(5)),
    (6, 3, target_T3),
)


def _orient_item(args) -> tuple:
    g, seconds = args
    stats = SearchStats.with_budget(seconds)
    return g, orient_as_oclique(g, stats), stats.nodes


def suite_girth_bounds(max_n: int = 8, budget_seconds: float | None = None,
                       workers: int = 1) -> VerificationReport:
    run = _Run("girth_bounds", "planar ocliques of girth at least 4, 5, 6 have order at most 6, 5, 3; "
                               "the bounds are attained; the order-6 girth-4 example is unique",
               budget_seconds)

    def body(run: _Run) -> None:
        for k, bound, make_witness in _GIRTH_CASES:
            w = make_witness()
            wu = underlying(w)
            if not (is_oclique(w) and is_planar(wu) and girth(wu) >= k and w.n == bound):
                run.fail(Finding(f"tightness witness for girth >= {k} fails its checks", w))
            else:
                run.witness(Finding(f"girth >= {k}: oclique of order {bound}", w, OrientationWitness(w)))
            graphs = [g for n in range(1, max_n + 1) for g in enumerate_graphs(n, f"planar-girth{k}")]
            run.count("graphs_enumerated", len(graphs))
            best = 0
            found: list[UndirectedGraph] = []
            for g, cert, nodes in run.pmap(_orient_item, [(g, run.remaining()) for g in graphs], workers):
                run.count("nodes_explored", nodes)
                if isinstance(cert, OrientationWitness):
                    best = max(best, g.n)
                    if g.n > bound:
                        run.fail(Finding(f"girth >= {k}: oclique of order {g.n} above {bound}", g, cert))
                    if k == 4 and g.n == 6:
                        found.append(g)
            run.report.counters[f"max_order_girth{k}"] = best
            if max_n >= bound and best < bound:
                run.fail(Finding(f"girth >= {k}: no orientable graph of order {bound} enumerated", wu))
            if k == 4 and max_n >= 6:
                run.report.counters["girth4_order6_classes"] = len(found)
                if len(found) != 1 or not isomorphic(found[0], wu):
                    for g in found:
                        run.fail(Finding("girth >= 4 order-6 orientable classes are not unique", g))
                    if not found:
                        run.fail(Finding("no girth >= 4 order-6 orientable class", wu))
                else:
                    for o in orientations(found[0], reduce_reversal=False):
                        run.count("orientations_tested")
                        if is_oclique(o) and not isomorphic(o, w):
                            run.fail(Finding("an oclique orientation differs from the target T6", o,
                                             OrientationWitness(o)))

    return _guarded(body, run)


# -- triangle-free planar diameter two -------------------------------------------------------


def suite_plesnik(max_n: int = 7, budget_seconds: float | None = None, workers: int = 1) -> VerificationReport:
    """Orders 3 and up; below that no graph has diameter exactly 2."""
    run = _Run("plesnik", "a graph is triangle-free, planar and of diameter 2 iff it is a star, "
                          "a K_{2,n} or a C5 blow-up", budget_seconds)

    def body(run: _Run) -> None:
        family_counts: dict[str, int] = {}
        for n in range(3, max_n + 1):
            for g in enumerate_graphs(n):
                run.check_budget()
                run.count("graphs_enumerated")
                member = is_triangle_free(g) and diameter(g) == 2 and is_planar(g)
                cls = plesnik_classify(g)
                if member != (cls != NOT_IN_FAMILIES):
                    run.fail(Finding(f"property says {member}, classifier says {cls}", g))
                    continue
                if cls == NOT_IN_FAMILIES:
                    continue
                family_counts[cls.family] = family_counts.get(cls.family, 0) + 1
                gen = {"star": plesnik_star, "k2n": plesnik_k2n, "c5blowup": plesnik_c5blowup}[cls.family]
                if not isomorphic(gen(*cls.params), g):
                    run.fail(Finding(f"classified as {cls} but not isomorphic to the generator", g))
        run.report.counters["family_members"] = family_counts

    return _guarded(body, run)


# -- homomorphisms onto the targets ----------------------------------------------------------


def _target_instances() -> list[tuple[str, UndirectedGraph]]:
    out = [(f"star({k})", plesnik_star(k)) for k in range(1, 7)]
    out += [(f"k2n({n})", plesnik_k2n(n)) for n in range(1, 5)]
    out += [(f"c5blowup({p},{q})", plesnik_c5blowup(p, q))
            for p in range(1, 4) for q in range(1, 4) if p + q <= 4]
    return out


def suite_targets(rule: Callable = canonical_hom_rule, instances=None,
                  budget_seconds: float | None = None, workers: int = 1) -> VerificationReport:
    run = _Run("targets", "every orientation of a star, K_{2,n} or C5 blow-up maps onto T3, T6 or T11 "
                          "by the sign rule", budget_seconds)

    def body(run: _Run) -> None:
        for name, g in (_target_instances() if instances is None else instances):
            for index in range(1 << g.m):
                run.check_budget()
                o = orientation_from_index(g, index)
                run.count("orientations_tested")
                mapping, target = rule(o)
                cert = Homomorphism(mapping, target)
                if not cert.check(o):
                    run.fail(Finding(f"{name}: rule map fails on orientation {index}", o, cert))
            run.count("instances")

    return _guarded(body, run)


# -- chromatic bounds ------------------------------------------------------------------------


def _bounds_item(args) -> tuple:
    g, is_tree, seconds = args
    stats = SearchStats.with_budget(seconds)
    failures = []
    tested = 0
    for index in range(1 << g.m if g.m else 1):
        o = orientation_from_index(g, index) if g.m else OrientedGraph(g.n, frozenset())
        tested += 1
        try:
            k, cert = chi_o(o, max_k=7, start=1, stats=stats)
        except BudgetExceeded as exc:
            if exc.lower_bound is None:
                raise
            failures.append(Finding("oriented chromatic number above 7", o,
                                    Exhaustion(stats.nodes, "no oriented 7-colouring")))
            continue
        if not cert.check(o):
            failures.append(Finding("colouring witness does not re-check", o, cert))
        if is_tree and k > 3:
            failures.append(Finding(f"tree orientation with chi_o = {k}", o, cert))
        a, r = omega_ao(o, stats)[0], omega_ro(o, stats)[0]
        if not a <= r <= k:
            failures.append(Finding(f"sandwich fails: {a}, {r}, {k}", o, cert))
    return failures, tested, stats.nodes


def suite_bounds(max_n: int = 6, budget_seconds: float | None = None, workers: int = 1) -> VerificationReport:
    run = _Run("bounds", "orientations of outerplanar graphs have chi_o <= 7, of trees chi_o <= 3, "
                         "and omega_ao <= omega_ro <= chi_o", budget_seconds)

    def body(run: _Run) -> None:
        graphs = [g for n in range(1, max_n + 1) for g in enumerate_graphs(n, "outerplanar")]
        run.count("graphs_enumerated", len(graphs))
        items = []
        for g in graphs:
            is_tree = g.is_connected() and g.m == g.n - 1
            run.count("trees", int(is_tree))
            items.append((g, is_tree, run.remaining()))
        for failures, tested, nodes in run.pmap(_bounds_item, items, workers):
            run.count("orientations_tested", tested)
            run.count("nodes_explored", nodes)
            for f in failures:
                run.fail(f)

    return _guarded(body, run)


# -- rigidity of the order-15 oclique -----------------------------------------------------------

# Number of vertex pairs at weak distance above 2 after deleting each arc,
# computed once with networkx shortest paths and kept here as the reference.
P15_BREAK_COUNTS: dict[tuple[int, int], int] = {
    (0, 8): 7, (0, 9): 8, (0, 10): 7, (0, 11): 7, (0, 12): 7, (0, 13): 7, (0, 14): 7,
    (1, 0): 7, (1, 5): 4, (1, 6): 3, (1, 7): 3, (2, 0): 7, (2, 1): 3, (2, 3): 2,
    (3, 0): 7, (3, 1): 3, (3, 4): 2, (4, 0): 7, (4, 1): 4, (5, 0): 7, (5, 6): 2,
    (6, 0): 7, (6, 7): 2, (7, 0): 8, (8, 12): 4, (8, 13): 3, (8, 14): 3, (9, 8): 3,
    (9, 10): 2, (10, 8): 3, (10, 11): 2, (11, 8): 4, (12, 13): 2, (13, 14): 2,
}


def _far_pairs(g: OrientedGraph) -> int:
    masks = weak2_masks(g)
    full = (1 << g.n) - 1
    return sum((full & ~masks[u] & ~((1 << (u + 1)) - 1)).bit_count() for u in range(g.n))


def suite_p15_rigidity(p15: OrientedGraph | None = None, reference: dict | None = None,
                       budget_seconds: float | None = None, workers: int = 1) -> VerificationReport:
    run = _Run("p15_rigidity", "deleting any single arc of the order-15 planar oclique leaves a non-oclique",
               budget_seconds)
    g = oclique_P15() if p15 is None else p15
    ref = P15_BREAK_COUNTS if reference is None else reference

    def body(run: _Run) -> None:
        if set(ref) != set(g.arcs):
            run.fail(Finding("transcription alarm: arc set differs from the stored reference", g,
                             details={"missing": sorted(map(list, set(ref) - g.arcs)),
                                      "extra": sorted(map(list, g.arcs - set(ref)))}))
        for arc in sorted(g.arcs):
            run.check_budget()
            h = g.without_arc(arc)
            run.count("deletions")
            far = _far_pairs(h)
            if far == 0:
                run.fail(Finding(f"deleting {arc} leaves an oclique", h, OrientationWitness(h),
                                 {"arc": list(arc)}))
            elif arc in ref and ref[arc] != far:
                run.fail(Finding(f"transcription alarm at {arc}: {far} far pairs, reference {ref[arc]}", h,
                                 details={"arc": list(arc)}))

    return _guarded(body, run)


SUITES: dict[str, Callable[..., VerificationReport]] = {
    "catalog": suite_catalog,
    "outerplanar_characterization": suite_outerplanar_characterization,
    "girth_bounds": suite_girth_bounds,
    "plesnik": suite_plesnik,
    "targets": suite_targets,
    "bounds": suite_bounds,
    "p15_rigidity": suite_p15_rigidity,
}

_TAKES_MAX_N = {"outerplanar_characterization", "girth_bounds", "plesnik", "bounds"}


def run_suite(name: str, max_n: int | None = None, budget_seconds: float | None = None,
              workers: int = 1) -> VerificationReport:
    try:
        fn = SUITES[name.replace("-", "_")]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}") from None
    kwargs: dict = {"budget_seconds": budget_seconds, "workers": workers}
    if max_n is not None and name.replace("-", "_") in _TAKES_MAX_N:
        kwargs["max_n"] = max_n
    return fn(**kwargs)


def run_all(max_n: int | None = None, budget_seconds: float | None = None,
            workers: int = 1) -> list[VerificationReport]:
    """Every suite; ``budget_seconds`` applies to each suite separately."""
    return [run_suite(name, max_n, budget_seconds, workers) for name in SUITES]
