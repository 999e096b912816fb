"""Canonical labeling and isomorph-free generation of connected graphs."""

from __future__ import annotations

import logging
from itertools import combinations
from typing import Iterable, Iterator, NewType, Sequence

from .graph import Graph, Graph6Error, bits, is_connected, parse_graph6, reach, write_graph6

log = logging.getLogger(__name__)

CANON_MAX_ORDER = 16
GEN_MAX_ORDER = 10

CanonicalCode = NewType("CanonicalCode", str)
"""graph6 string of the canonically relabeled graph."""


def _refine(nbrs: Sequence[Sequence[int]], colors: list[int]) -> list[int]:
    """Colour refinement to an equitable partition.

    Colours are ranks of (old colour, sorted neighbour colours), so the
    relative order of existing cells never changes.
    """
    n = len(colors)
    k = max(colors) + 1
    while k < n:
        sigs = [(colors[v], tuple(sorted([colors[u] for u in nbrs[v]]))) for v in range(n)]
        distinct = sorted(set(sigs))
        if len(distinct) == k:
            break
        rank = {s: i for i, s in enumerate(distinct)}
        colors = [rank[s] for s in sigs]
        k = len(distinct)
    return colors


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


class _Search:
    """Individualization-refinement search for the minimum leaf code."""

    def __init__(self, adj: Sequence[int]):
        self.adj = adj
        self.n = len(adj)
        self.nbrs = [bits(row) for row in adj]
        self.best_code: int | None = None
        self.best_order: list[int] | None = None
        self.autos: list[list[int]] = []
        self.pruned = False

    def leaf_code(self, order: Sequence[int]) -> int:
        adj = self.adj
        code = 0
        for j in range(1, self.n):
            rj = adj[order[j]]
            for i in range(j):
                code = code << 1 | (rj >> order[i] & 1)
        return code

    def run(self, colors: list[int]) -> None:
        self._node(colors, [])

    def _node(self, colors: list[int], prefix: list[int]) -> None:
        n = self.n
        colors = _refine(self.nbrs, colors)
        k = max(colors) + 1
        if k == n:
            order = [0] * n
            for v, c in enumerate(colors):
                order[c] = v
            code = self.leaf_code(order)
            if self.best_code is None or code < self.best_code:
                self.best_code, self.best_order = code, order
            elif code == self.best_code:
                gamma = [0] * n
                for a, b in zip(order, self.best_order):
                    gamma[a] = b
                self.autos.append(gamma)
            return
        sizes = [0] * k
        for c in colors:
            sizes[c] += 1
        target = min((s, c) for c, s in enumerate(sizes) if s > 1)[1]
        cell = [v for v in range(n) if colors[v] == target]
        adj = self.adj
        reps = []
        for v in cell:
            for r in reps:
                if adj[v] & ~(1 << r) == adj[r] & ~(1 << v):
                    self.pruned = True
                    break
            else:
                reps.append(v)
        explored: list[int] = []
        for w in reps:
            if explored and self.autos and self._in_explored_orbit(w, explored, prefix):
                self.pruned = True
                continue
            explored.append(w)
            child = [
                c if c < target or v == w else c + 1 for v, c in enumerate(colors)
            ]
            self._node(child, prefix + [w])

    def _in_explored_orbit(self, w: int, explored: list[int], prefix: list[int]) -> bool:
        gens = [g for g in self.autos if all(g[p] == p for p in prefix)]
        if not gens:
            return False
        parent = list(range(self.n))
        for g in gens:
            for a, b in enumerate(g):
                ra, rb = _find(parent, a), _find(parent, b)
                if ra != rb:
                    parent[ra] = rb
        root = _find(parent, w)
        return any(_find(parent, e) == root for e in explored)


def canonical_search(adj: Sequence[int], colors: list[int] | None = None) -> _Search:
    n = len(adj)
    s = _Search(adj)
    s.run(list(colors) if colors is not None else [0] * n)
    return s


def canonical_order(g: Graph) -> list[int]:
    """``order[i]`` is the vertex placed at position ``i`` by the canonical labeling."""
    if g.n > CANON_MAX_ORDER:
        raise ValueError(f"canonical_form supports n <= {CANON_MAX_ORDER}")
    return canonical_search(g.adj).best_order  # type: ignore[return-value]


def canonical_graph(g: Graph) -> Graph:
    order = canonical_order(g)
    perm = [0] * g.n
    for pos, v in enumerate(order):
        perm[v] = pos
    return g.relabel(perm)


def canonical_form(g: Graph) -> CanonicalCode:
    """Isomorphism-invariant code: equal iff the graphs are isomorphic."""
    return CanonicalCode(write_graph6(canonical_graph(g)))


def is_asymmetric(g: Graph) -> bool:
    s = canonical_search(g.adj)
    return not s.autos and not s.pruned


def marked_code(adj: Sequence[int], v: int) -> int:
    """Canonical code of the graph with vertex ``v`` individualized."""
    colors = [1] * len(adj)
    colors[v] = 0
    return canonical_search(adj, colors).best_code  # type: ignore[return-value]


# -- canonical augmentation -----------------------------------------------


def _noncut(adj: Sequence[int], w: int, full: int) -> bool:
    rest = full & ~(1 << w)
    if not rest:
        return True
    start = (rest & -rest).bit_length() - 1
    return reach(adj, start, rest) == rest


def _children(padj: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Accepted one-vertex extensions of a connected parent.

    The new vertex ``m`` must lie in the canonical deletion orbit: among
    non-cut vertices, maximum degree, then maximum sorted neighbour-degree
    tuple, then minimum marked canonical code.
    """
    m = len(padj)
    n = m + 1
    full = (1 << n) - 1
    pfull = (1 << m) - 1
    pdeg = [r.bit_count() for r in padj]
    pnoncut = [_noncut(padj, w, pfull) for w in range(m)]
    symmetric = m > 1 and not is_asymmetric(Graph(m, padj))
    seen: set[int] = set()
    for k in range(1, m + 1):
        if k >= 2:
            # a parent non-cut vertex stays non-cut in any child with |S| >= 2
            if any(pnoncut[w] and pdeg[w] > k for w in range(m)):
                continue
            blocked = sum(1 << w for w in range(m) if pnoncut[w] and pdeg[w] == k)
        else:
            blocked = 0
        for combo in combinations(range(m), k):
            s = 0
            for u in combo:
                s |= 1 << u
            if s & blocked:
                continue
            adj = list(padj)
            for u in combo:
                adj[u] |= 1 << m
            adj.append(s)
            ok = True
            ties = [m]
            for w in range(m):
                d = pdeg[w] + (s >> w & 1)
                if d < k:
                    continue
                if pnoncut[w]:
                    nc = s != 1 << w or m == 1
                else:
                    nc = _noncut(adj, w, full)
                if not nc:
                    continue
                if d > k:
                    ok = False
                    break
                ties.append(w)
            if not ok:
                continue
            if len(ties) > 1:
                profile = {
                    w: sorted([adj[u].bit_count() for u in bits(adj[w])], reverse=True)
                    for w in ties
                }
                mine = profile[m]
                if any(profile[w] > mine for w in ties):
                    continue
                ties = [w for w in ties if profile[w] == mine]
            code = None
            if len(ties) > 1:
                codes = {w: marked_code(adj, w) for w in ties}
                code = codes[m]
                if code != min(codes.values()):
                    continue
            if symmetric:
                if code is None:
                    code = marked_code(adj, m)
                if code in seen:
                    continue
                seen.add(code)
            yield tuple(adj)


def _connected_adj(n: int) -> Iterator[tuple[int, ...]]:
    if n == 1:
        yield (0,)
        return
    for parent in list(_connected_adj(n - 1)):
        yield from _children(parent)


def connected_graphs(n: int, part: int = 0, parts: int = 1) -> Iterator[Graph]:
    """One representative per isomorphism class of connected graphs of order n.

    ``part``/``parts`` restrict the output to the children of every
    ``parts``-th parent, so disjoint slices can be generated independently.
    """
    if not 1 <= n <= GEN_MAX_ORDER:
        raise ValueError(f"connected_graphs supports 1 <= n <= {GEN_MAX_ORDER}")
    if not 0 <= part < parts:
        raise ValueError("need 0 <= part < parts")
    if n == 1:
        if part == 0:
            yield Graph(1, (0,))
        return
    for parent in list(_connected_adj(n - 1))[part::parts]:
        for adj in _children(parent):
            yield Graph(n, adj)


def ingest_graph6(
    lines: Iterable[str],
    *,
    connected_only: bool = False,
    on_error: str = "abort",
    errors: list[tuple[int, str]] | None = None,
) -> Iterator[Graph]:
    """Parse a graph6 line stream; blank lines are ignored.

    With ``on_error="skip"`` malformed lines are logged (and appended to
    ``errors`` as ``(line_number, message)``); with ``"abort"`` the first
    one raises.
    """
    if on_error not in ("skip", "abort"):
        raise ValueError("on_error must be 'skip' or 'abort'")
    for lineno, line in enumerate(lines, 1):
        text = line.strip()
        if not text:
            continue
        try:
            g = parse_graph6(text)
        except Graph6Error as exc:
            if on_error == "abort":
                raise Graph6Error(f"line {lineno}: {exc}") from exc
            log.warning("line %d: %s", lineno, exc)
            if errors is not None:
                errors.append((lineno, str(exc)))
            continue
        if connected_only and not is_connected(g):
            continue
        yield g
