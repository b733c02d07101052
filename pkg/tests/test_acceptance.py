"""The nine acceptance criteria, each checked at its stated tolerance and time limit.

Every criterion prints one PASS/FAIL line; under pytest the lines are also
collected into the terminal summary.  Run directly with
``python tests/test_acceptance.py`` for the lines alone.
"""

from __future__ import annotations

import itertools
import os
import random
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from oclique.analysis import chi_o, is_oclique, oclique_violation, omega_ao, omega_ro  # noqa: E402
from oclique.catalog import get, minimal_outerplanar, oclique_O7, oclique_P15  # noqa: E402
from oclique.certificates import OrientationWitness, VertexSubset  # noqa: E402
from oclique.graphs import OrientedGraph, isomorphic, underlying  # noqa: E402
from oclique.orientability import edge_minimal, orient_as_oclique  # noqa: E402
from oclique.structure import domination_number, is_outerplanar, is_planar  # noqa: E402
from oclique.verify.suites import _target_instances  # noqa: E402
from oclique.verify import (  # noqa: E402
    suite_bounds,
    suite_catalog,
    suite_girth_bounds,
    suite_outerplanar_characterization,
    suite_p15_rigidity,
    suite_plesnik,
    suite_targets,
)

SEED = 20240601


def _report(r) -> tuple[bool, str]:
    detail = ", ".join(f"{k}={v}" for k, v in r.counters.items() if not isinstance(v, dict))
    if r.counterexamples:
        detail += "; first counterexample: " + r.counterexamples[0].description
    return r.verdict == "pass", f"verdict={r.verdict} {detail}"


def criterion_1():
    o7, p15 = oclique_O7(), oclique_P15()
    checks = {
        "O7 oclique": is_oclique(o7),
        "chi_o(O7)=7": chi_o(o7, max_k=7, start=1)[0] == 7,
        "O7 outerplanar": is_outerplanar(underlying(o7)),
        "P15 oclique": is_oclique(p15),
        "|V(P15)|=15": p15.n == 15,
        "P15 planar": is_planar(underlying(p15)),
        "gamma(P15)=1": domination_number(underlying(p15))[0] == 1,
        "hub 7/7": (p15.in_degree(0), p15.out_degree(0)) == (7, 7),
    }
    ok, detail = _report(suite_catalog(catalog=[get("O7"), get("P15")]))
    failed = [k for k, v in checks.items() if not v]
    return ok and not failed, f"{detail}; failed checks: {failed or 'none'}"


def criterion_2():
    pats = minimal_outerplanar()
    bad = []
    for e in pats:
        g = e.graph
        if not is_outerplanar(g):
            bad.append(f"{e.id} not outerplanar")
        cert = orient_as_oclique(g)
        if not (isinstance(cert, OrientationWitness) and cert.check(g)):
            bad.append(f"{e.id} not orientable")
        if not edge_minimal(g):
            bad.append(f"{e.id} not edge-minimal")
    for x, y in itertools.combinations(pats, 2):
        if isomorphic(x.graph, y.graph):
            bad.append(f"{x.id} ~ {y.id}")
    return len(pats) == 11 and not bad, f"{len(pats)} graphs; problems: {bad or 'none'}"


def criterion_3():
    r = suite_outerplanar_characterization(max_n=7)
    ok, detail = _report(r)
    return ok and r.counters.get("order7_orientable_classes", 0) > 0, \
        detail + f", orientable_by_order={r.counters.get('orientable_by_order')}"


def criterion_4():
    r = suite_girth_bounds(max_n=8)
    ok, detail = _report(r)
    exact = (r.counters.get("max_order_girth4"), r.counters.get("max_order_girth5"),
             r.counters.get("max_order_girth6")) == (6, 5, 3)
    unique = r.counters.get("girth4_order6_classes") == 1
    return ok and exact and unique, detail


def criterion_5():
    r = suite_plesnik(max_n=7)
    ok, detail = _report(r)
    return ok, detail + f", family_members={r.counters.get('family_members')}"


def criterion_6():
    r = suite_targets()
    ok, detail = _report(r)
    # K_{1,k} for k <= 6, K_{2,n} for n <= 4 and the C5 blow-ups with p + q <= 4
    stars = sum(2 ** k for k in range(1, 7))
    k2n = sum(2 ** (2 * n) for n in range(1, 5))
    blowups = sum(2 ** (1 + 2 * (p + q)) for p in range(1, 4) for q in range(1, 4) if p + q <= 4)
    expected = stars + k2n + blowups
    full = r.counters.get("orientations_tested") == expected
    sizes = {name: 2 ** g.m for name, g in _target_instances()}
    named = sizes.get("k2n(4)") == 256 and sizes.get("c5blowup(2,2)") == 512
    return ok and full and named, detail + f" (expected {expected} orientations)"


def criterion_7():
    return _report(suite_bounds(max_n=6))


def criterion_8():
    r = suite_p15_rigidity()
    ok, detail = _report(r)
    return ok and r.counters.get("deletions") == 34, detail


def _quantities(g: OrientedGraph) -> tuple:
    return (is_oclique(g), chi_o(g, max_k=max(g.n, 1))[0], omega_ao(g)[0], omega_ro(g)[0])


def _random_digraph(rng: random.Random) -> OrientedGraph:
    n = rng.randint(1, 8)
    density = rng.random()
    arcs = []
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < density:
            arcs.append((u, v) if rng.random() < 0.5 else (v, u))
    return OrientedGraph(n, frozenset(arcs))


def _violations(g: OrientedGraph, rng: random.Random) -> list[str]:
    out = []
    q = _quantities(g)
    if _quantities(g.reverse()) != q:
        out.append("reversal")
    perm = list(range(g.n))
    rng.shuffle(perm)
    h = OrientedGraph(g.n, frozenset((perm[u], perm[v]) for u, v in g.arcs))
    if _quantities(h) != q:
        out.append("isomorphism")
    free = [p for p in itertools.combinations(range(g.n), 2) if not g.adjacent(*p)]
    if free:
        u, v = rng.choice(free)
        bigger = g.with_arc((u, v) if rng.random() < 0.5 else (v, u))
        if any(a > b for a, b in zip(q[1:], _quantities(bigger)[1:])):
            out.append("monotonicity")
    viol = oclique_violation(g)
    k, hom = chi_o(g, max_k=max(g.n, 1))
    a, avs = omega_ao(g)
    r, rvs = omega_ro(g)
    closed = (viol is None or viol.check(g)) and hom.check(g) and \
        VertexSubset(avs, "induced").check(g) and VertexSubset(rvs, "relative").check(g)
    if not closed:
        out.append("certificate")
    if not a <= r <= k or (q[0] != (a == g.n) or q[0] != (k == g.n)):
        out.append("sandwich")
    return out


def criterion_9():
    rng = random.Random(SEED)
    failures: dict[str, int] = {}
    for _ in range(500):
        g = _random_digraph(rng)
        for name in _violations(g, rng):
            failures[name] = failures.get(name, 0) + 1
    return not failures, f"500 digraphs, seed {SEED}; violations: {failures or 'none'}"


CRITERIA = [
    (1, "catalog claims for O7 and P15", criterion_1, 60),
    (2, "the eleven minimal outerplanar patterns", criterion_2, 120),
    (3, "outerplanar characterisation up to order 7", criterion_3, 15 * 60),
    (4, "girth bounds over planar graphs up to order 8", criterion_4, 20 * 60),
    (5, "triangle-free planar diameter-2 families up to order 7", criterion_5, 5 * 60),
    (6, "rule-built homomorphisms onto the targets", criterion_6, 120),
    (7, "chromatic bounds and the clique sandwich up to order 6", criterion_7, 20 * 60),
    (8, "single-arc rigidity of P15", criterion_8, 1),
    (9, "seeded property suites on 500 random digraphs", criterion_9, 5 * 60),
]


def evaluate(number: int) -> tuple[bool, str]:
    _, title, fn, limit = CRITERIA[number - 1]
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    in_time = elapsed < limit
    passed = ok and in_time
    line = (f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {title} "
            f"({elapsed:.2f} s, limit {limit} s{'' if in_time else ', TOO SLOW'}) {detail}")
    print(line)
    return passed, line


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion{c[0]}" for c in CRITERIA])
def test_acceptance(number):
    from conftest import ACCEPTANCE_LINES

    passed, line = evaluate(number)
    ACCEPTANCE_LINES.append(line)
    assert passed, line


if __name__ == "__main__":
    results = [evaluate(c[0])[0] for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
