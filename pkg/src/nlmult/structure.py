"""Structural predicates and exact residual checks on induced patterns."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from .algebra import RationalPoly, factor_at, residual_mod
from .families import PATTERN_IDS, pattern
from .graph import Graph, bits, diameter
from .spectra import (
    MultiplicityProfile,
    ThetaDescriptor,
    multiplicity_profile,
    nl_charpoly,
    rho_n_minus_1_is_one,
    thetas_from_profile,
)


class NotATwinCliqueError(ValueError):
    pass


class PatternMismatchError(ValueError):
    pass


# -- independence number ---------------------------------------------------


def _color_classes(adj: Sequence[int], cand: int) -> tuple[list[int], list[int]]:
    """Greedy colouring of ``cand``; vertices listed with their colour bound."""
    order, bounds = [], []
    uncolored = cand
    color = 0
    while uncolored:
        color += 1
        q = uncolored
        while q:
            low = q & -q
            v = low.bit_length() - 1
            q &= ~adj[v] & ~low
            uncolored &= ~low
            order.append(v)
            bounds.append(color)
    return order, bounds


def max_clique_size(adj: Sequence[int]) -> int:
    """Clique number by branch and bound with a greedy-colouring bound."""
    n = len(adj)
    best = 0

    def expand(size: int, cand: int) -> None:
        nonlocal best
        order, bounds = _color_classes(adj, cand)
        for v, bound in zip(reversed(order), reversed(bounds)):
            if size + bound <= best:
                return
            sub = cand & adj[v]
            if sub:
                expand(size + 1, sub)
            elif size + 1 > best:
                best = size + 1
            cand &= ~(1 << v)

    if n:
        expand(0, (1 << n) - 1)
    return best


def independence_number(g: Graph) -> int:
    full = (1 << g.n) - 1
    # a clique cover of g is a colouring of its complement
    comp = [full & ~row & ~(1 << u) for u, row in enumerate(g.adj)]
    return max_clique_size(comp)


def nu_equals_two(g: Graph) -> bool:
    full = (1 << g.n) - 1
    comp = [full & ~row & ~(1 << u) for u, row in enumerate(g.adj)]
    has_edge = False
    for u in range(g.n):
        for v in bits(comp[u] >> (u + 1) << (u + 1)):
            has_edge = True
            if comp[u] & comp[v]:
                return False
    return has_edge


# -- twin cliques ----------------------------------------------------------


def twin_cliques(g: Graph) -> list[frozenset[int]]:
    """Classes of vertices with equal closed neighbourhoods, size at least 2."""
    classes: dict[int, list[int]] = {}
    for u, row in enumerate(g.adj):
        classes.setdefault(row | 1 << u, []).append(u)
    return sorted(
        (frozenset(c) for c in classes.values() if len(c) >= 2), key=lambda s: min(s)
    )


def _is_twin_clique(g: Graph, k: frozenset[int]) -> bool:
    if len(k) < 2 or any(not 0 <= v < g.n for v in k):
        return False
    mask = sum(1 << v for v in k)
    closed = {g.adj[v] | 1 << v for v in k}
    return len(closed) == 1 and (closed.pop() & mask) == mask


def check_twin_eigenvalue(g: Graph, k) -> bool:
    """Whether 1 + 1/d is an eigenvalue of multiplicity at least |k| - 1."""
    k = frozenset(k)
    if not _is_twin_clique(g, k):
        raise NotATwinCliqueError(f"{sorted(k)} is not a twin clique")
    d = g.degree(next(iter(k)))
    lam = 1 + Fraction(1, d)
    factor = RationalPoly((-lam, 1)) ** (len(k) - 1)
    return not nl_charpoly(g) % factor


# -- induced patterns ------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    pattern_id: str
    map: tuple[int, ...]

    def degrees(self, g: Graph) -> list[int]:
        return [g.degree(v) for v in self.map]


def _embeddings(g: Graph, pattern_id: str) -> Iterator[tuple[int, ...]]:
    p = pattern(pattern_id)
    k = p.order
    padj = p.graph.adj
    chosen: list[int] = []

    def extend() -> Iterator[tuple[int, ...]]:
        i = len(chosen)
        if i == k:
            yield tuple(chosen)
            return
        for v in range(g.n):
            if v in chosen:
                continue
            row = g.adj[v]
            if all((row >> w & 1) == (padj[i] >> j & 1) for j, w in enumerate(chosen)):
                chosen.append(v)
                yield from extend()
                chosen.pop()

    return extend()


def is_induced_embedding(g: Graph, emb: Embedding) -> bool:
    p = pattern(emb.pattern_id)
    m = emb.map
    if len(m) != p.order or len(set(m)) != len(m):
        return False
    return all(
        g.has_edge(m[i], m[j]) == p.graph.has_edge(i, j) for i, j in combinations(range(p.order), 2)
    )


def find_induced(g: Graph, pattern_id: str, dedup: bool = True) -> list[Embedding]:
    """Induced copies of a catalog pattern, as maps from roles to host vertices.

    With ``dedup`` only one map per copy is kept: the lexicographically
    smallest among its images under the pattern's automorphisms.
    """
    autos = pattern(pattern_id).automorphisms
    out = []
    for m in _embeddings(g, pattern_id):
        if dedup and any(tuple(m[s[i]] for i in range(len(m))) < m for s in autos):
            continue
        out.append(Embedding(pattern_id, m))
    return out


def has_induced(g: Graph, pattern_id: str) -> bool:
    return next(_embeddings(g, pattern_id), None) is not None


def is_cograph(g: Graph) -> bool:
    return not has_induced(g, "P4")


# -- trace partition -------------------------------------------------------


@dataclass(frozen=True)
class TracePartition:
    """``buckets[U]`` holds the outside vertices whose neighbours on the P4 are
    exactly the roles in ``U`` (roles numbered 1..4)."""

    p4: Embedding
    buckets: dict[frozenset[int], tuple[int, ...]]

    def bucket(self, *roles: int) -> tuple[int, ...]:
        return self.buckets[frozenset(roles)]

    def nonempty(self) -> dict[frozenset[int], tuple[int, ...]]:
        return {u: vs for u, vs in self.buckets.items() if vs}


def trace_partition(g: Graph, p4: Embedding) -> TracePartition:
    if p4.pattern_id != "P4" or not is_induced_embedding(g, p4):
        raise PatternMismatchError("trace_partition needs an induced P4 embedding")
    roles = range(1, 5)
    buckets: dict[frozenset[int], list[int]] = {
        frozenset(c): [] for r in range(5) for c in combinations(roles, r)
    }
    on_path = set(p4.map)
    for u in range(g.n):
        if u in on_path:
            continue
        trace = frozenset(i + 1 for i, v in enumerate(p4.map) if g.has_edge(u, v))
        buckets[trace].append(u)
    return TracePartition(p4, {k: tuple(v) for k, v in buckets.items()})


# -- residual checks -------------------------------------------------------

_X = RationalPoly.x()
_T = 1 - _X  # t = 1 - theta


def p4_identity_polynomial(d1: int, d2: int, d3: int, d4: int) -> RationalPoly:
    """Left side of the induced-P4 identity as a polynomial in theta."""
    return d1 * d2 * d3 * d4 * _T ** 4 - (d1 * d2 + d3 * d4 + d1 * d4) * _T ** 2 + 1


def pattern_relations(pattern_id: str, d: Sequence[int]) -> list[RationalPoly]:
    """Denominator-free relations in theta for a pattern; ``d[i]`` is the host
    degree of role ``v{i+1}``."""
    d1, d2, d3, d4, d5 = d
    t = _T
    if pattern_id == "H1":
        return [d1 * t + 1, d5 * t + 1]
    if pattern_id == "H2":
        return [d2 * t + 1, d5 * t + 1]
    if pattern_id == "H3":
        return [d1 * d2 * t ** 2 + d4 * t - 1]
    if pattern_id == "H4":
        return [
            d3 * d2 * t + (d3 + d5),
            d4 * d5 * t + (d2 + d4),
            d1 * (d3 + d5) * t ** 2 + d3 * t - 1,
        ]
    if pattern_id == "H5":
        return [
            d4 * (d2 + d5) * t + (d2 + 2 * d4),
            d1 * (d3 + d5) * t + (d3 + 2 * d1),
        ]
    if pattern_id == "H6":
        return [d1 * t + 1, d4 * t + 1]
    raise PatternMismatchError(f"no relation system for pattern {pattern_id!r}")


def theta_minpoly(theta: ThetaDescriptor) -> RationalPoly:
    return factor_at(theta.factor, theta.interval)


def check_p4_identity(g: Graph, theta: ThetaDescriptor, p4: Embedding) -> RationalPoly:
    if p4.pattern_id != "P4" or not is_induced_embedding(g, p4):
        raise PatternMismatchError("check_p4_identity needs an induced P4 embedding")
    return residual_mod(p4_identity_polynomial(*p4.degrees(g)), theta_minpoly(theta))


def check_pattern_relations(g: Graph, theta: ThetaDescriptor, emb: Embedding) -> list[RationalPoly]:
    if emb.pattern_id not in PATTERN_IDS[1:] or not is_induced_embedding(g, emb):
        raise PatternMismatchError(f"{emb} is not an induced H-pattern embedding in g")
    mp = theta_minpoly(theta)
    return [residual_mod(p, mp) for p in pattern_relations(emb.pattern_id, emb.degrees(g))]


def p4_degree_violations(g: Graph) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Pairs of induced P4s sharing three consecutive vertices whose free
    endpoints (or free second vertices) have different degrees."""
    maps = [e.map for e in find_induced(g, "P4", dedup=False)]
    bad = []
    by_tail: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    by_ends: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for m in maps:
        by_tail.setdefault(m[1:], []).append(m)
        by_ends.setdefault((m[0], m[2], m[3]), []).append(m)
    for group, pos in ((by_tail, 0), (by_ends, 1)):
        for ms in group.values():
            for a, b in combinations(ms, 2):
                if g.degree(a[pos]) != g.degree(b[pos]):
                    bad.append((a, b))
    return bad


# -- hypotheses under which the relations are checked ---------------------


@dataclass(frozen=True)
class OmegaStatus:
    has_p4: bool
    has_theta: bool
    rho_nminus1_is_one: bool
    nu: int
    diam: int | float

    @property
    def holds(self) -> bool:
        return (
            self.has_p4
            and self.has_theta
            and not self.rho_nminus1_is_one
            and self.nu == 2
            and self.diam == 2
        )


def omega_status(g: Graph, profile: MultiplicityProfile | None = None) -> OmegaStatus:
    if profile is None:
        profile = multiplicity_profile(g)
    return OmegaStatus(
        has_p4=has_induced(g, "P4"),
        has_theta=g.n >= 5 and bool(thetas_from_profile(profile)),
        rho_nminus1_is_one=rho_n_minus_1_is_one(g, profile),
        nu=independence_number(g),
        diam=diameter(g),
    )


def pattern_residuals(g: Graph, profile: MultiplicityProfile | None = None) -> list[tuple[str, tuple[int, ...], RationalPoly]]:
    """Every nonzero residual of the P4 identity and the pattern relations,
    over all labelled embeddings and every theta; empty when all hold."""
    if profile is None:
        profile = multiplicity_profile(g)
    out = []
    for theta in thetas_from_profile(profile):
        for emb in find_induced(g, "P4", dedup=False):
            r = check_p4_identity(g, theta, emb)
            if r:
                out.append(("P4", emb.map, r))
        for pid in PATTERN_IDS[1:]:
            for emb in find_induced(g, pid, dedup=False):
                for r in check_pattern_relations(g, theta, emb):
                    if r:
                        out.append((pid, emb.map, r))
    return out
