import random
from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from oracles import random_connected_graph, random_graph, to_nx

from nlmult.algebra import RationalPoly
from nlmult.enumeration import connected_graphs
from nlmult.families import (
    complete,
    complete_minus_edge,
    complete_tripartite,
    cycle,
    path,
    pattern,
)
from nlmult.graph import Graph
from nlmult.spectra import find_theta, multiplicity_profile
from nlmult.structure import (
    Embedding,
    NotATwinCliqueError,
    PatternMismatchError,
    check_p4_identity,
    check_pattern_relations,
    check_twin_eigenvalue,
    find_induced,
    has_induced,
    independence_number,
    is_cograph,
    is_induced_embedding,
    nu_equals_two,
    omega_status,
    p4_degree_violations,
    p4_identity_polynomial,
    pattern_relations,
    pattern_residuals,
    trace_partition,
    twin_cliques,
)


@pytest.mark.parametrize(
    "g, nu",
    [(cycle(5), 2), (complete_tripartite(1, 2, 3), 3), (path(5), 3), (complete(4), 1), (cycle(6), 3)],
)
def test_independence_examples(g, nu):
    assert independence_number(g) == nu


@given(st.integers(0, 10_000), st.integers(1, 14))
def test_independence_matches_networkx(seed, n):
    rng = random.Random(seed)
    g = random_graph(rng, n, rng.random())
    comp = nx.complement(to_nx(g))
    expected = max(len(c) for c in nx.find_cliques(comp))
    assert independence_number(g) == expected


def test_nu_fast_path_agrees_on_all_small_graphs():
    for n in range(2, 8):
        for g in connected_graphs(n):
            assert nu_equals_two(g) == (independence_number(g) == 2)


def test_twin_clique_examples():
    k5e = complete_minus_edge(5)
    (k,) = twin_cliques(k5e)
    assert k == frozenset({0, 1, 2})
    assert check_twin_eigenvalue(k5e, k)
    # 1 + 1/4 has multiplicity 2 in K5 - e
    p = multiplicity_profile(k5e)
    assert any(e.factor == RationalPoly((-Fraction(5, 4), 1)) and e.multiplicity >= 2 for e in p.spectrum)
    k4 = complete(4)
    assert twin_cliques(k4) == [frozenset(range(4))]
    assert check_twin_eigenvalue(k4, range(4))
    assert any(e.factor == RationalPoly((-Fraction(4, 3), 1)) and e.multiplicity == 3
               for e in multiplicity_profile(k4).spectrum)


def test_twin_clique_rejects_non_twins():
    with pytest.raises(NotATwinCliqueError):
        check_twin_eigenvalue(cycle(5), {0, 1})
    with pytest.raises(NotATwinCliqueError):
        check_twin_eigenvalue(complete(4), {0})


@given(st.integers(0, 10_000))
def test_planted_twin_clique(seed):
    rng = random.Random(seed)
    m, q = rng.randint(2, 6), rng.randint(2, 5)
    host = random_connected_graph(rng, m)
    attach = [v for v in range(m) if rng.random() < 0.5] or [0]
    clique = range(m, m + q)
    edges = list(host.edges()) + list(combinations(clique, 2)) + [(v, w) for v in attach for w in clique]
    g = Graph.from_edges(m + q, edges)
    assert any(frozenset(clique) <= c for c in twin_cliques(g))
    assert check_twin_eigenvalue(g, clique)


def test_find_induced_p4_in_c5():
    c5 = cycle(5)
    assert len(find_induced(c5, "P4", dedup=False)) == 10
    found = find_induced(c5, "P4")
    assert len(found) == 5
    assert all(is_induced_embedding(c5, e) for e in found)
    assert has_induced(c5, "H3")
    assert not has_induced(c5, "H1")


def test_cographs():
    assert is_cograph(complete(6))
    assert is_cograph(complete_tripartite(2, 2, 3))
    assert not is_cograph(path(4))
    assert not find_induced(complete(6), "P4")


@given(st.integers(0, 10_000), st.integers(4, 9))
def test_cograph_matches_networkx_p4_search(seed, n):
    rng = random.Random(seed)
    g = random_graph(rng, n, rng.random())
    gm = nx.algorithms.isomorphism.GraphMatcher(to_nx(g), nx.path_graph(4))
    assert is_cograph(g) == (not gm.subgraph_is_isomorphic())


@pytest.mark.parametrize("pid", ["H1", "H2", "H3", "H4", "H5", "H6"])
def test_pattern_found_in_itself(pid):
    p = pattern(pid)
    found = find_induced(p.graph, pid)
    assert found == [Embedding(pid, tuple(range(p.order)))]
    assert len(find_induced(p.graph, pid, dedup=False)) == len(p.automorphisms)


def test_trace_partition_of_c5():
    c5 = cycle(5)
    emb = Embedding("P4", (0, 1, 2, 3))
    tp = trace_partition(c5, emb)
    assert tp.nonempty() == {frozenset({1, 4}): (4,)}
    with pytest.raises(PatternMismatchError):
        trace_partition(c5, Embedding("P4", (0, 2, 1, 3)))


def test_trace_partition_has_no_free_or_isolated_bucket_when_nu_is_two():
    # with independence number two an outside vertex must meet every
    # non-adjacent pair of path vertices
    for n in range(5, 8):
        for g in connected_graphs(n):
            if not nu_equals_two(g):
                continue
            for emb in find_induced(g, "P4"):
                tp = trace_partition(g, emb)
                for roles in tp.nonempty():
                    assert roles & {1, 3} and roles & {2, 4} and roles & {1, 4}


def test_p4_identity_examples():
    t = Fraction
    assert p4_identity_polynomial(1, 1, 1, 1)(t(2)) == -1
    assert p4_identity_polynomial(2, 2, 2, 2)(t(0)) == 16 - 12 + 1
    c5 = cycle(5)
    for theta in find_theta(c5):
        for emb in find_induced(c5, "P4", dedup=False):
            assert not check_p4_identity(c5, theta, emb)


def test_pattern_relation_examples():
    assert pattern_relations("H1", (2, 0, 0, 0, 2))[0](Fraction(3, 2)) == 0
    # symmetric H4 degrees make the first two relations coincide in shape
    rel = pattern_relations("H4", (3, 3, 3, 3, 3))
    assert rel[0] == rel[1]
    c5 = cycle(5)
    for theta in find_theta(c5):
        for emb in find_induced(c5, "H3", dedup=False):
            assert all(not r for r in check_pattern_relations(c5, theta, emb))
    with pytest.raises(PatternMismatchError):
        pattern_relations("P4", (1, 1, 1, 1, 1))


def test_check_rejects_wrong_embedding():
    c5 = cycle(5)
    theta = find_theta(c5)[0]
    with pytest.raises(PatternMismatchError):
        check_p4_identity(c5, theta, Embedding("P4", (0, 2, 4, 1)))
    with pytest.raises(PatternMismatchError):
        check_pattern_relations(c5, theta, Embedding("H1", (0, 1, 2, 3, 4)))


def test_c5_is_the_omega_example():
    status = omega_status(cycle(5))
    assert status.holds
    assert not pattern_residuals(cycle(5))
    assert not p4_degree_violations(cycle(5))
    assert not omega_status(complete_tripartite(1, 2, 2)).holds


def test_p4_degree_violations_detects_unequal_ends():
    # 0-1-2-3 and 4-1-2-3 share the tail, vertex 4 has a different degree than 0
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (4, 1), (4, 5)])
    assert p4_degree_violations(g)
