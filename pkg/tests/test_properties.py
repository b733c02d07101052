"""Hypothesis checks of the structural invariants of the oriented quantities."""

from __future__ import annotations

import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from oclique.analysis import chi_o, is_oclique, oclique_violation, omega_ao, omega_ro
from oclique.certificates import OrientationWitness, VertexSubset
from oclique.graphs import OrientedGraph, canonical_form, orientations, underlying
from oclique.orientability import orient_as_oclique
from oclique.verify import enumerate_graphs
from strategies import oriented_graphs, permuted


def quantities(g: OrientedGraph) -> tuple:
    return (is_oclique(g), chi_o(g, max_k=g.n)[0], omega_ao(g)[0], omega_ro(g)[0])


@given(oriented_graphs(max_n=8))
def test_reversal_invariance(g):
    assert quantities(g) == quantities(g.reverse())


@given(oriented_graphs(max_n=8), st.randoms(use_true_random=False))
def test_isomorphism_invariance(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = permuted(g, perm)
    assert canonical_form(g) == canonical_form(h)
    assert quantities(g) == quantities(h)


@settings(max_examples=40)
@given(oriented_graphs(max_n=7), st.randoms(use_true_random=False))
def test_arc_monotonicity_along_augmentation_chain(g, rnd):
    free = [p for p in itertools.combinations(range(g.n), 2) if not g.adjacent(*p)]
    rnd.shuffle(free)
    prev = quantities(g)[1:]
    for u, v in free:
        g = g.with_arc((u, v) if rnd.random() < 0.5 else (v, u))
        cur = quantities(g)[1:]
        assert all(a <= b for a, b in zip(prev, cur))
        prev = cur


@given(oriented_graphs(max_n=8))
def test_clique_characterisation(g):
    full = g.n
    ocl, chi, ao, ro = quantities(g)
    assert ocl == (ao == full) == (ro == full) == (chi == full)
    assert ao <= ro <= chi


@given(oriented_graphs(max_n=8))
def test_certificates_recheck(g):
    viol = oclique_violation(g)
    assert viol is None or viol.check(g)
    _, hom = chi_o(g, max_k=g.n)
    assert hom.check(g)
    assert VertexSubset(omega_ao(g)[1], "induced").check(g)
    assert VertexSubset(omega_ro(g)[1], "relative").check(g)


@settings(max_examples=30)
@given(oriented_graphs(max_n=7))
def test_orientation_search_certificate_recheck(g):
    u = underlying(g)
    cert = orient_as_oclique(u)
    if isinstance(cert, OrientationWitness):
        assert cert.check(u)
    assert isinstance(cert, OrientationWitness) == oracles.orientable(u.n, u.edges)
    if is_oclique(g):
        assert isinstance(cert, OrientationWitness)


def test_sandwich_over_every_orientation_up_to_five():
    count = 0
    for n in range(1, 6):
        for g in enumerate_graphs(n):
            for o in orientations(g):
                ao, ro, chi = omega_ao(o)[0], omega_ro(o)[0], chi_o(o, max_k=n, start=1)[0]
                assert ao <= ro <= chi
                count += 1
    assert count == sum(2 ** len(g.edges) for n in range(1, 6) for g in enumerate_graphs(n))
