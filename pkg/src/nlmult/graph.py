"""Simple undirected graphs stored as adjacency bitsets, plus graph6 I/O."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_ORDER = 64
INFINITE = float("inf")


class Graph6Error(ValueError):
    """Base class for graph6 decoding failures."""


class Graph6LengthError(Graph6Error):
    """The line is too short or too long for the order it declares."""


class Graph6ByteError(Graph6Error):
    """A byte falls outside the printable range 63..126."""


class Graph6OrderError(Graph6Error):
    """The declared order is outside 1..64."""


class Graph6PaddingError(Graph6Error):
    """Padding bits after the last adjacency bit are not zero."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``adj[u]`` is an int whose bit ``v`` is set iff ``u ~ v``.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_ORDER:
            raise ValueError(f"order must be in 1..{MAX_ORDER}, got {self.n}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency has wrong number of rows")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"row {u} references a vertex >= n")
            if row >> u & 1:
                raise ValueError(f"loop at vertex {u}")
            r = row
            while r:
                low = r & -r
                v = low.bit_length() - 1
                if not self.adj[v] >> u & 1:
                    raise ValueError(f"asymmetric edge {u}-{v}")
                r ^= low

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)} outside 0..{n - 1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    def __repr__(self) -> str:
        return f"Graph({write_graph6(self)!r})"

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, u: int) -> list[int]:
        return bits(self.adj[u])

    def degree(self, u: int) -> int:
        return self.adj[u].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def number_of_edges(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, row in enumerate(self.adj):
            for v in bits(row >> (u + 1) << (u + 1)):
                yield u, v

    def adjacency_matrix(self) -> list[list[int]]:
        return [[row >> v & 1 for v in range(self.n)] for row in self.adj]

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``u`` renamed ``perm[u]``."""
        rows = [0] * self.n
        for u, row in enumerate(self.adj):
            image = 0
            for v in bits(row):
                image |= 1 << perm[v]
            rows[perm[u]] = image
        return Graph(self.n, tuple(rows))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, vertex ``vertices[i]`` becoming ``i``."""
        index = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            row = 0
            for w in bits(self.adj[v]):
                if w in index:
                    row |= 1 << index[w]
            rows.append(row)
        return Graph(len(vertices), tuple(rows))

    def complement(self) -> "Graph":
        return complement(self)

    def is_connected(self) -> bool:
        return is_connected(self)

    def diameter(self) -> int | float:
        return diameter(self)

    def is_complete(self) -> bool:
        return self.number_of_edges() == self.n * (self.n - 1) // 2


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~row & ~(1 << u) for u, row in enumerate(g.adj)))


def reach(adj: Sequence[int], start: int, allowed: int) -> int:
    """Bitset of vertices reachable from ``start`` inside the vertex set ``allowed``."""
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        while frontier:
            low = frontier & -frontier
            nxt |= adj[low.bit_length() - 1]
            frontier ^= low
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def is_connected(g: Graph) -> bool:
    full = (1 << g.n) - 1
    return reach(g.adj, 0, full) == full


def bfs_distances(g: Graph, source: int) -> list[int | None]:
    dist: list[int | None] = [None] * g.n
    dist[source] = 0
    seen = 1 << source
    frontier = seen
    level = 0
    while frontier:
        level += 1
        nxt = 0
        for u in bits(frontier):
            nxt |= g.adj[u]
        nxt &= ~seen
        for v in bits(nxt):
            dist[v] = level
        seen |= nxt
        frontier = nxt
    return dist


def diameter(g: Graph) -> int | float:
    """Largest BFS distance; ``INFINITE`` for a disconnected graph."""
    best = 0
    for u in range(g.n):
        dist = bfs_distances(g, u)
        if None in dist:
            return INFINITE
        best = max(best, max(dist))
    return best


def _encode_order(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    return "~" + "".join(chr(((n >> shift) & 63) + 63) for shift in (12, 6, 0))


def write_graph6(g: Graph) -> str:
    """graph6 line (no header, no newline) for the graph's current labeling."""
    n = g.n
    out = [_encode_order(n)]
    acc = 0
    count = 0
    for j in range(1, n):
        row = g.adj[j]
        for i in range(j):
            acc = acc << 1 | (row >> i & 1)
            count += 1
            if count == 6:
                out.append(chr(acc + 63))
                acc = count = 0
    if count:
        out.append(chr((acc << (6 - count)) + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    """Decode one headerless graph6 line (trailing whitespace is ignored)."""
    s = text.rstrip("\r\n")
    if not s:
        raise Graph6LengthError("empty graph6 line")
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6ByteError(f"byte {ord(ch)} at position {pos} is outside 63..126")
    if s[0] == "~":
        if len(s) >= 2 and s[1] == "~":
            raise Graph6OrderError("orders above 258047 are not supported")
        if len(s) < 4:
            raise Graph6LengthError("truncated order field")
        n = 0
        for ch in s[1:4]:
            n = n << 6 | (ord(ch) - 63)
        body = s[4:]
    else:
        n = ord(s[0]) - 63
        body = s[1:]
    if not 1 <= n <= MAX_ORDER:
        raise Graph6OrderError(f"order {n} outside 1..{MAX_ORDER}")
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise Graph6LengthError(
            f"order {n} needs {(nbits + 5) // 6} data bytes, got {len(body)}"
        )
    value = 0
    for ch in body:
        value = value << 6 | (ord(ch) - 63)
    pad = 6 * len(body) - nbits
    if value & ((1 << pad) - 1):
        raise Graph6PaddingError("nonzero padding bits")
    value >>= pad
    rows = [0] * n
    pos = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if value >> pos & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            pos -= 1
    return Graph(n, tuple(rows))
