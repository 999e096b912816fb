import random

import pytest

from oracles import random_connected_graph

from nlmult.classify import (
    ds_check,
    lemma_sweep,
    lemma_violations,
    multipartite_parts,
    scan_order,
    spectral_classify,
    structural_classify,
    verify_theorem,
)
from nlmult.enumeration import canonical_graph
from nlmult.families import (
    complete_bipartite,
    complete_minus_edge,
    complete_split,
    complete_tripartite,
    cycle,
    path,
)


@pytest.mark.parametrize(
    "g, label, member",
    [
        (cycle(5), "CycleC5", True),
        (complete_tripartite(1, 2, 2), "Tripartite(1,2,2)", True),
        (complete_minus_edge(6), "CompleteMinusEdge", True),
        (cycle(6), "NotInFamily", False),
        (path(6), "NotInFamily", False),
    ],
)
def test_examples(g, label, member):
    st = structural_classify(g)
    sv = spectral_classify(g)
    assert st.label == label
    assert st.matched == member == sv.in_G_n_nminus3


def test_cycle5_verdict():
    sv = spectral_classify(cycle(5))
    assert sv.nu == 2 and sv.diam == 2 and not sv.cograph
    assert sv.in_omega and not sv.rho_nminus1_is_one


def test_tripartite_eigenvalue_one_is_smallest_nonzero():
    sv = spectral_classify(complete_tripartite(2, 2, 3))
    assert sv.rho_nminus1_is_one and sv.is_rho_n_minus_1 and sv.equals_one


def test_multipartite_parts():
    assert multipartite_parts(complete_tripartite(1, 2, 3)) == [1, 2, 3]
    assert multipartite_parts(complete_bipartite(2, 2)) == [2, 2]
    assert multipartite_parts(cycle(5)) is None


def test_structural_without_catalog():
    g = canonical_graph(complete_split(1, 6))  # a star is not in any family
    assert not structural_classify(g, None).matched


def test_small_orders_rejected():
    with pytest.raises(ValueError):
        spectral_classify(cycle(4))
    with pytest.raises(ValueError):
        verify_theorem(10)


@pytest.mark.parametrize("n", [5, 6, 7])
def test_verify_small_orders(n):
    report = verify_theorem(n)
    assert report.verified and report.problem_answered
    assert report.spectral_set == report.structural_set


def test_verify_order_five_details():
    report = verify_theorem(5)
    assert report.scanned == 21
    assert report.clause_histogram == {
        "CompleteMinusEdge": 1, "CycleC5": 1, "Tripartite": 2, "iii": 1, "iv": 1,
    }
    assert {r["family"] for r in report.spectral} >= {"CycleC5", "CompleteMinusEdge"}


def test_ds_small_orders():
    for n in (5, 6):
        report = ds_check(n)
        assert report.verified
        assert report.entries


def test_relabelled_copies_are_not_mates():
    g = cycle(5)
    scan = scan_order(5, graphs=[g, g.relabel([1, 2, 3, 4, 0])])
    report = ds_check(5, scan)
    assert all(not e["mates"] for e in report.entries)


def test_lemma_sweep_small():
    report = lemma_sweep(5)
    assert report.verified and report.omega_graphs == ["DqK"]
    assert lemma_sweep(6).verified


def test_lemma_violations_on_random_graphs():
    rng = random.Random(11)
    for _ in range(40):
        assert lemma_violations(random_connected_graph(rng, rng.randint(5, 10))) == []


def test_scan_merge_matches_single_pass():
    whole = scan_order(6)
    parts = scan_order(6, jobs=2)
    assert whole.scanned == parts.scanned
    assert sorted(whole.spectral) != [] and len(whole.spectral) == len(parts.spectral)
