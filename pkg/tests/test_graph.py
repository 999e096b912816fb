import pytest
from hypothesis import given, strategies as st

from nlmult.graph import (
    Graph,
    Graph6ByteError,
    Graph6LengthError,
    Graph6OrderError,
    Graph6PaddingError,
    complement,
    diameter,
    is_connected,
    parse_graph6,
    write_graph6,
)


@st.composite
def graphs(draw, min_n=1, max_n=12):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, (e for e, keep in zip(pairs, mask) if keep))


@pytest.mark.parametrize(
    "code, n, edges",
    [
        ("@", 1, 0),
        ("A_", 2, 1),
        ("A?", 2, 0),
        ("D??", 5, 0),
        ("Dhc", 5, 5),
        ("D~{", 5, 10),
    ],
)
def test_known_codes(code, n, edges):
    g = parse_graph6(code)
    assert (g.n, g.number_of_edges()) == (n, edges)
    assert write_graph6(g) == code


def test_cycle_code_is_a_cycle():
    g = parse_graph6("Dhc")
    assert g.degrees() == [2] * 5 and is_connected(g)


@given(graphs(max_n=20))
def test_round_trip(g):
    assert parse_graph6(write_graph6(g)) == g


def test_long_order_header():
    g = Graph.from_edges(63, [(0, 62)])
    code = write_graph6(g)
    assert code.startswith("~??~")
    assert parse_graph6(code) == g
    big = Graph.from_edges(64, [(i, i + 1) for i in range(63)])
    assert parse_graph6(write_graph6(big)) == big


@pytest.mark.parametrize(
    "code, error",
    [
        ("", Graph6LengthError),
        ("D?", Graph6LengthError),
        ("D???", Graph6LengthError),
        ("D\x20\x20\x20", Graph6ByteError),
        ("A`", Graph6PaddingError),
        ("?", Graph6OrderError),
        ("~?A?", Graph6OrderError),
        ("~~??????", Graph6OrderError),
        ("~?", Graph6LengthError),
    ],
)
def test_malformed(code, error):
    with pytest.raises(error):
        parse_graph6(code)


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 3)])


def test_diameter_and_connectivity():
    path = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert diameter(path) == 3
    split = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert not is_connected(split)
    assert diameter(split) == float("inf")


@given(graphs())
def test_complement_involution(g):
    h = complement(g)
    assert complement(h) == g
    assert g.number_of_edges() + h.number_of_edges() == g.n * (g.n - 1) // 2


@given(graphs(), st.randoms(use_true_random=False))
def test_relabel_preserves_degrees(g, rng):
    perm = list(range(g.n))
    rng.shuffle(perm)
    h = g.relabel(perm)
    assert sorted(h.degrees()) == sorted(g.degrees())
    assert h.number_of_edges() == g.number_of_edges()
