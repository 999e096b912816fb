import io
import random

import pytest
from hypothesis import given, strategies as st

import networkx as nx

from oracles import (
    atlas_connected,
    labeled_connected_count,
    orbit_sum,
    random_connected_graph,
    random_graph,
    random_relabel,
    to_nx,
)

from nlmult.enumeration import (
    canonical_form,
    canonical_graph,
    connected_graphs,
    ingest_graph6,
    is_asymmetric,
)
from nlmult.graph import Graph6Error, parse_graph6, write_graph6


@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21), (6, 112), (7, 853)])
def test_counts(n, count):
    graphs = list(connected_graphs(n))
    assert len(graphs) == count
    assert len({canonical_form(g) for g in graphs}) == count
    assert all(g.is_connected() for g in graphs)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_classes_cover_all_labelled_graphs(n):
    # sum of n!/|Aut| over the classes counts every labelled connected graph once
    assert orbit_sum(list(connected_graphs(n))) == labeled_connected_count(n)


@pytest.mark.parametrize("n", [5, 6])
def test_matches_atlas(n):
    ours = {canonical_form(g) for g in connected_graphs(n)}
    assert ours == {canonical_form(g) for g in atlas_connected(n)}


def test_slices_partition_the_order():
    whole = sorted(write_graph6(canonical_graph(g)) for g in connected_graphs(6))
    sliced = sorted(
        write_graph6(canonical_graph(g)) for part in range(5) for g in connected_graphs(6, part, 5)
    )
    assert whole == sliced


@given(st.integers(0, 10_000), st.integers(1, 16))
def test_canonical_form_is_invariant(seed, n):
    rng = random.Random(seed)
    g = random_graph(rng, n, rng.random())
    code = canonical_form(g)
    for _ in range(5):
        assert canonical_form(random_relabel(rng, g)) == code


@given(st.integers(0, 10_000), st.integers(4, 9))
def test_canonical_form_separates_non_isomorphic(seed, n):
    rng = random.Random(seed)
    g, h = random_graph(rng, n, 0.5), random_graph(rng, n, 0.5)
    same = canonical_form(g) == canonical_form(h)
    assert same == nx.is_isomorphic(to_nx(g), to_nx(h))


def test_canonical_graph_is_isomorphic_copy():
    rng = random.Random(1)
    g = random_connected_graph(rng, 9)
    assert nx.is_isomorphic(to_nx(g), to_nx(canonical_graph(g)))
    assert canonical_graph(canonical_graph(g)) == canonical_graph(g)


def test_asymmetry():
    assert not is_asymmetric(parse_graph6("Dhc"))
    # smallest asymmetric graphs have 6 vertices
    assert any(is_asymmetric(g) for g in connected_graphs(6))
    assert not any(is_asymmetric(g) for g in connected_graphs(5))


def test_ingest_skip_and_abort():
    text = "Dhc\n\nnot-a-graph\nD??\n"
    errors = []
    got = list(ingest_graph6(io.StringIO(text), on_error="skip", errors=errors))
    assert [write_graph6(g) for g in got] == ["Dhc", "D??"]
    assert errors and errors[0][0] == 3
    connected = list(ingest_graph6(io.StringIO(text), on_error="skip", connected_only=True))
    assert [write_graph6(g) for g in connected] == ["Dhc"]
    with pytest.raises(Graph6Error, match="line 3"):
        list(ingest_graph6(io.StringIO(text)))
    with pytest.raises(ValueError):
        list(ingest_graph6([], on_error="ignore"))
