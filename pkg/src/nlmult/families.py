"""Named graph families, the small induced patterns used by the residual
checks, and the catalog of exceptional graphs discovered by enumeration."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from itertools import combinations, permutations
from pathlib import Path
from typing import Iterable

from .graph import Graph, parse_graph6, write_graph6

CATALOG_VERSION = 1


def _check_sizes(*sizes: int) -> None:
    if any(not isinstance(s, int) or s < 1 for s in sizes):
        raise ValueError(f"part sizes must be positive integers, got {sizes}")


def complete(n: int) -> Graph:
    _check_sizes(n)
    return Graph.from_edges(n, combinations(range(n), 2))


def complete_minus_edge(n: int) -> Graph:
    """K_n with the edge between the last two vertices removed."""
    if n < 2:
        raise ValueError("K_n - e needs n >= 2")
    return Graph.from_edges(n, (e for e in combinations(range(n), 2) if e != (n - 2, n - 1)))


def complete_multipartite(*parts: int) -> Graph:
    _check_sizes(*parts)
    label = []
    for i, size in enumerate(parts):
        label += [i] * size
    n = len(label)
    return Graph.from_edges(n, ((u, v) for u, v in combinations(range(n), 2) if label[u] != label[v]))


def complete_bipartite(p: int, q: int) -> Graph:
    return complete_multipartite(p, q)


def complete_tripartite(a: int, b: int, c: int) -> Graph:
    return complete_multipartite(a, b, c)


def complete_split(a: int, n: int) -> Graph:
    """K_a joined to (n - a) isolated vertices; the clique is ``0..a-1``."""
    _check_sizes(a, n)
    if a > n:
        raise ValueError("complete_split needs a <= n")
    return Graph.from_edges(n, ((u, v) for u, v in combinations(range(n), 2) if u < a))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    _check_sizes(n)
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def double_star_complement(a: int, b: int) -> Graph:
    """Complement of the double star whose adjacent centres 0 and 1 carry
    ``a`` and ``b`` leaves; leaves of 0 come first."""
    _check_sizes(a + 1, b + 1)
    n = a + b + 2
    non = {(0, 1)} | {(0, 2 + i) for i in range(a)} | {(1, 2 + a + i) for i in range(b)}
    return Graph.from_edges(n, (e for e in combinations(range(n), 2) if e not in non))


def clique_with_pendant(n: int) -> Graph:
    """K_{n-1} on ``1..n-1`` plus vertex 0 hanging off vertex ``n-1``."""
    if n < 3:
        raise ValueError("clique_with_pendant needs n >= 3")
    return Graph.from_edges(n, [(0, n - 1)] + list(combinations(range(1, n), 2)))


def triangle_blowup(t: int) -> Graph:
    """Triangle ``0,1,2`` with a K_t glued onto each edge (every copy joined
    to both ends of its edge)."""
    _check_sizes(t)
    n = 3 + 3 * t
    edges = [(0, 1), (0, 2), (1, 2)]
    for side, (x, y) in enumerate(((0, 1), (0, 2), (1, 2))):
        block = range(3 + side * t, 3 + (side + 1) * t)
        edges += [(v, x) for v in block] + [(v, y) for v in block]
        edges += list(combinations(block, 2))
    return Graph.from_edges(n, edges)


def windmill(k: int, t: int) -> Graph:
    """K_1 joined to k disjoint copies of K_t; the hub is vertex 0."""
    _check_sizes(k, t)
    n = 1 + k * t
    edges = [(0, v) for v in range(1, n)]
    for i in range(k):
        edges += list(combinations(range(1 + i * t, 1 + (i + 1) * t), 2))
    return Graph.from_edges(n, edges)


# -- induced patterns ------------------------------------------------------


@dataclass(frozen=True)
class Pattern:
    """Small labelled graph; vertex ``i`` plays role ``v{i+1}``."""

    name: str
    graph: Graph
    automorphisms: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return self.graph.n

    @property
    def roles(self) -> tuple[str, ...]:
        return tuple(f"v{i + 1}" for i in range(self.graph.n))


def _automorphisms(g: Graph) -> tuple[tuple[int, ...], ...]:
    edges = set(g.edges())
    out = []
    for perm in permutations(range(g.n)):
        if all(tuple(sorted((perm[u], perm[v]))) in edges for u, v in edges):
            out.append(perm)
    return tuple(out)


def _pattern(name: str, n: int, edges: Iterable[tuple[int, int]]) -> Pattern:
    # edges given with 1-based role numbers
    g = Graph.from_edges(n, ((u - 1, v - 1) for u, v in edges))
    return Pattern(name, g, _automorphisms(g))


_P4 = [(1, 2), (2, 3), (3, 4)]

PATTERN_IDS = ("P4", "H1", "H2", "H3", "H4", "H5", "H6")


def _build_patterns() -> dict[str, Pattern]:
    return {
        "P4": _pattern("P4", 4, _P4),
        "H1": _pattern("H1", 5, _P4 + [(1, 5), (2, 5)]),
        "H2": _pattern("H2", 5, _P4 + [(1, 5), (2, 5), (3, 5)]),
        "H3": _pattern("H3", 5, _P4 + [(1, 5), (4, 5)]),
        "H4": _pattern("H4", 5, _P4 + [(1, 5), (2, 5), (4, 5)]),
        "H5": _pattern("H5", 5, _P4 + [(1, 5), (2, 5), (3, 5), (4, 5)]),
        # K_{2,3} (sides {v2, v5} and {v1, v3, v4}) plus the edge v1 v4
        "H6": _pattern(
            "H6", 5, [(1, 2), (2, 3), (2, 4), (5, 1), (5, 3), (5, 4), (1, 4)]
        ),
    }


_PATTERNS = _build_patterns()


def pattern_catalog() -> dict[str, Pattern]:
    return dict(_PATTERNS)


def pattern(name: str) -> Pattern:
    try:
        return _PATTERNS[name]
    except KeyError:
        raise ValueError(f"unknown pattern {name!r}; expected one of {PATTERN_IDS}") from None


# -- exceptional catalog ---------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    graph: Graph
    code: str
    clause: str

    @property
    def order(self) -> int:
        return self.graph.n

    def degree_sequence(self) -> list[int]:
        return sorted(self.graph.degrees(), reverse=True)


@dataclass(frozen=True)
class ExceptionalCatalog:
    entries: tuple[CatalogEntry, ...]
    n_max: int

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def by_code(self) -> dict[str, CatalogEntry]:
        return {e.code: e for e in self.entries}

    def of_order(self, n: int) -> list[CatalogEntry]:
        return [e for e in self.entries if e.order == n]

    def clause_histogram(self) -> dict[str, int]:
        hist: dict[str, int] = {}
        for e in self.entries:
            hist[e.clause] = hist.get(e.clause, 0) + 1
        return hist


CLAUSES = ("ii", "iii", "iv")


def clause_tag(g: Graph, rho_n_minus_1_one: bool, nu: int, diam: int, cograph: bool) -> str:
    """Which exceptional clause the graph witnesses, or ``"unclassified"``."""
    if rho_n_minus_1_one:
        return "unclassified"
    if nu != 2:
        return "ii"
    if diam == 3:
        return "iii"
    if cograph:
        return "iv"
    return "unclassified"


def default_catalog_paths() -> tuple[Path, Path]:
    base = resources.files("nlmult") / "data"
    return Path(str(base / "exceptional.g6")), Path(str(base / "exceptional.json"))


def save_catalog(catalog: ExceptionalCatalog, g6_path: str | Path, json_path: str | Path | None = None) -> None:
    g6_path = Path(g6_path)
    json_path = Path(json_path) if json_path else g6_path.with_suffix(".json")
    g6_path.write_text("".join(write_graph6(e.graph) + "\n" for e in catalog.entries))
    meta = {
        "version": CATALOG_VERSION,
        "n_max": catalog.n_max,
        "entries": [
            {
                "id": e.id,
                "order": e.order,
                "clause": e.clause,
                "degree_sequence": e.degree_sequence(),
                "g6": write_graph6(e.graph),
            }
            for e in catalog.entries
        ],
    }
    json_path.write_text(json.dumps(meta, indent=2) + "\n")


def load_catalog(g6_path: str | Path | None = None, json_path: str | Path | None = None) -> ExceptionalCatalog:
    from .enumeration import canonical_form

    if g6_path is None:
        g6_path, default_json = default_catalog_paths()
        json_path = json_path or default_json
    g6_path = Path(g6_path)
    json_path = Path(json_path) if json_path else g6_path.with_suffix(".json")
    lines = [ln.strip() for ln in g6_path.read_text().splitlines() if ln.strip()]
    meta = json.loads(json_path.read_text())
    if meta.get("version") != CATALOG_VERSION:
        raise ValueError(f"unsupported catalog version {meta.get('version')}")
    if len(lines) != len(meta["entries"]):
        raise ValueError("catalog graph6 file and JSON sidecar disagree in length")
    entries = []
    for line, rec in zip(lines, meta["entries"]):
        if line != rec["g6"]:
            raise ValueError(f"catalog entry {rec['id']}: graph6 mismatch")
        g = parse_graph6(line)
        if g.n != rec["order"] or sorted(g.degrees(), reverse=True) != rec["degree_sequence"]:
            raise ValueError(f"catalog entry {rec['id']}: metadata mismatch")
        entries.append(CatalogEntry(rec["id"], g, canonical_form(g), rec["clause"]))
    return ExceptionalCatalog(tuple(entries), meta["n_max"])


def bootstrap_exceptional_catalog(n_max: int, graphs_by_order=None) -> ExceptionalCatalog:
    """Enumerate connected graphs of orders 5..n_max and keep those with an
    eigenvalue of multiplicity n - 3 outside the known infinite families.

    ``graphs_by_order`` may map an order to an iterable of graphs to reuse an
    existing enumeration.
    """
    from .classify import family_of, spectral_classify
    from .enumeration import canonical_form, canonical_graph, connected_graphs
    from .spectra import has_multiplicity_n_minus_3, scaled_charpoly

    if n_max < 5:
        raise ValueError("bootstrap needs n_max >= 5")
    found = []
    for n in range(5, n_max + 1):
        source = graphs_by_order.get(n) if graphs_by_order else None
        for g in source if source is not None else connected_graphs(n):
            if not has_multiplicity_n_minus_3(scaled_charpoly(g)[0], n):
                continue
            if family_of(g, catalog=None)[0] != "NotInFamily":
                continue
            verdict = spectral_classify(g)
            tag = clause_tag(g, verdict.rho_nminus1_is_one, verdict.nu, verdict.diam, verdict.cograph)
            found.append((canonical_graph(g), tag))
    rank = {c: i for i, c in enumerate(CLAUSES + ("unclassified",))}
    found.sort(key=lambda item: (rank[item[1]], item[0].n, write_graph6(item[0])))
    return ExceptionalCatalog(tuple(_assign_ids(found)), n_max)


def _assign_ids(found: list[tuple[Graph, str]]) -> list[CatalogEntry]:
    """Clause (ii) graphs are G1, G2, ...; the other clauses come in one
    family per clause, so their members are named ``G4.n<order>.<k>`` and
    ``G5.n<order>.<k>``."""
    from .enumeration import canonical_form

    out = []
    counter: dict[tuple, int] = {}
    for g, tag in found:
        if tag == "ii":
            key: tuple = (tag,)
            counter[key] = counter.get(key, 0) + 1
            ident = f"G{counter[key]}"
        else:
            key = (tag, g.n)
            counter[key] = counter.get(key, 0) + 1
            base = {"iii": "G4", "iv": "G5"}.get(tag, "X")
            ident = f"{base}.n{g.n}.{counter[key]}"
        out.append(CatalogEntry(ident, g, canonical_form(g), tag))
    return out
