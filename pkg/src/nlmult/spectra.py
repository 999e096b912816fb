"""Exact normalized-Laplacian spectra.

The normalized Laplacian I - D^{-1/2} A D^{-1/2} has irrational entries,
but it is similar (via D^{1/2}) to I - D^{-1} A, which is rational.  All
exact work goes through the latter.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Sequence

import numpy as np

from .algebra import (
    IsolatingInterval,
    RationalPoly,
    SquarefreeDecomposition,
    charpoly,
    det_bareiss,
    has_root_in,
    isolate_roots,
    may_have_root_of_multiplicity_int,
    primitive,
    rank,
    refine,
    seeded_refine,
    squarefree,
    sturm_count,
)
from .graph import Graph


FLOAT_TOLERANCE = 1e-8
"""Allowed distance from a float eigenvalue to its exact interval."""


class IsolatedVertexError(ValueError):
    pass


class JacobiConvergenceError(RuntimeError):
    pass


def walk_matrix(g: Graph) -> list[list[Fraction]]:
    """The random-walk matrix D^{-1} A (row-stochastic)."""
    rows = []
    for u in range(g.n):
        d = g.degree(u)
        if d == 0:
            raise IsolatedVertexError(f"vertex {u} has degree 0")
        w = Fraction(1, d)
        rows.append([w if g.has_edge(u, v) else Fraction(0) for v in range(g.n)])
    return rows


def laplacian_walk_charpoly(g: Graph) -> RationalPoly:
    """Faddeev-LeVerrier on I - D^{-1}A; the slow reference path."""
    w = walk_matrix(g)
    m = [[int(i == j) - w[i][j] for j in range(g.n)] for i in range(g.n)]
    return charpoly(m)


def scaled_charpoly(g: Graph) -> tuple[list[int], int]:
    """Integer coefficients of det((x-1)D + A) = det(D) * charpoly, and det(D).

    The polynomial is recovered from one big-integer determinant at
    x = 2**K (Kronecker substitution); K is chosen above the Hadamard-type
    coefficient bound 2**(3n/2) * prod(d).
    """
    n = g.n
    deg = g.degrees()
    if 0 in deg:
        raise IsolatedVertexError(f"vertex {deg.index(0)} has degree 0")
    det_d = prod(deg)
    k = det_d.bit_length() + 2 * n + 2
    scale = (1 << k) - 1
    rows = []
    for u in range(n):
        row = [g.adj[u] >> v & 1 for v in range(n)]
        row[u] = scale * deg[u]
        rows.append(row)
    value = det_bareiss(rows)
    half = 1 << (k - 1)
    mask = (1 << k) - 1
    coeffs = []
    for _ in range(n + 1):
        r = value & mask
        if r >= half:
            r -= 1 << k
        coeffs.append(r)
        value = (value - r) >> k
    if value or coeffs[-1] != det_d:
        raise ArithmeticError("Kronecker decoding failed; coefficient bound violated")
    return coeffs, det_d


def nl_charpoly(g: Graph) -> RationalPoly:
    """Characteristic polynomial of the normalized Laplacian (monic, exact)."""
    coeffs, det_d = scaled_charpoly(g)
    return RationalPoly(Fraction(c, det_d) for c in coeffs)


def charpoly_key(g: Graph) -> tuple[int, ...]:
    """Exact cospectrality key: primitive integer form of the charpoly."""
    return tuple(primitive(scaled_charpoly(g)[0]))


@dataclass(frozen=True)
class ExactEigenvalue:
    factor: RationalPoly
    interval: IsolatingInterval
    multiplicity: int

    def __float__(self) -> float:
        return float(self.interval)


@dataclass(frozen=True)
class MultiplicityProfile:
    n: int
    charpoly: RationalPoly
    decomposition: SquarefreeDecomposition
    roots: tuple[tuple[IsolatingInterval, ...], ...]
    spectrum: tuple[ExactEigenvalue, ...]
    """Distinct eigenvalues, ascending, with multiplicities."""

    def multiplicities(self) -> list[int]:
        return [e.multiplicity for e in self.spectrum]

    def expanded(self) -> list[ExactEigenvalue]:
        out = []
        for e in self.spectrum:
            out.extend([e] * e.multiplicity)
        return out


def profile_from_charpoly(p: RationalPoly) -> MultiplicityProfile:
    dec = squarefree(p)
    radical = dec.radical()
    intervals = isolate_roots(radical)
    per_part: list[list[IsolatingInterval]] = [[] for _ in dec.parts]
    spectrum = []
    part_ints = [f.integer_coeffs() for f, _ in dec.parts]
    for iv in intervals:
        owners = [i for i, ints in enumerate(part_ints) if has_root_in(ints, iv)]
        if len(owners) != 1:
            raise ArithmeticError("radical root not owned by exactly one part")
        i = owners[0]
        per_part[i].append(iv)
        f, k = dec.parts[i]
        spectrum.append(ExactEigenvalue(f, iv, k))
    total = sum(e.multiplicity for e in spectrum)
    if total != p.degree:
        raise ArithmeticError(f"only {total} of {p.degree} roots are real")
    return MultiplicityProfile(
        p.degree, p, dec, tuple(tuple(r) for r in per_part), tuple(spectrum)
    )


def multiplicity_profile(g: Graph) -> MultiplicityProfile:
    return profile_from_charpoly(nl_charpoly(g))


def compare(e: ExactEigenvalue, c) -> int:
    """Sign of (eigenvalue - c), exactly."""
    c = Fraction(c)
    if e.factor(c) == 0 and e.interval.contains(c):
        return 0
    iv = e.interval
    ints = e.factor.integer_coeffs()
    while iv.lo < c <= iv.hi:
        iv = refine(ints, iv, iv.width / 2)
    return 1 if iv.lo >= c else -1


@dataclass(frozen=True)
class ThetaDescriptor:
    """An eigenvalue of multiplicity n - 3, as an algebraic number."""

    factor: RationalPoly
    interval: IsolatingInterval
    multiplicity: int
    is_rho1: bool
    is_rho_n_minus_1: bool
    equals_one: bool

    def __float__(self) -> float:
        return float(self.interval)


def find_theta(g: Graph, profile: MultiplicityProfile | None = None) -> list[ThetaDescriptor]:
    if g.n < 5:
        raise ValueError("find_theta needs n >= 5")
    if profile is None:
        profile = multiplicity_profile(g)
    return thetas_from_profile(profile)


def thetas_from_profile(profile: MultiplicityProfile) -> list[ThetaDescriptor]:
    target = profile.n - 3
    spec = profile.spectrum
    out = []
    for idx, e in enumerate(spec):
        if e.multiplicity != target:
            continue
        out.append(
            ThetaDescriptor(
                factor=e.factor,
                interval=e.interval,
                multiplicity=e.multiplicity,
                is_rho1=idx == len(spec) - 1,
                # spec[0] is the simple eigenvalue 0 of a connected graph
                is_rho_n_minus_1=idx == 1,
                equals_one=compare(e, 1) == 0,
            )
        )
    return out


def has_multiplicity_n_minus_3(scaled: Sequence[int], n: int) -> bool:
    """Exact membership test for an eigenvalue of multiplicity exactly n - 3."""
    if not may_have_root_of_multiplicity_int(scaled, n - 3):
        return False
    dec = squarefree(RationalPoly(scaled))
    f = dec.part(n - 3)
    return f is not None and bool(isolate_roots(f))


def adjacency_rank(g: Graph) -> int:
    return rank(g.adjacency_matrix())


def eigenvalue_one_multiplicity(g: Graph) -> int:
    """Multiplicity of eigenvalue 1, read off as the nullity of A."""
    return g.n - adjacency_rank(g)


def _strip_root(p: RationalPoly, r) -> RationalPoly:
    lin = RationalPoly((-Fraction(r), 1))
    q, rem = divmod(p, lin)
    return q if not rem else p


def rho_n_minus_1_is_one(g: Graph, profile: MultiplicityProfile | None = None) -> bool:
    """True iff no eigenvalue lies in (0, 1) and 1 is an eigenvalue."""
    if g.n < 2:
        raise ValueError("needs n >= 2")
    if profile is None:
        profile = multiplicity_profile(g)
    radical = profile.decomposition.radical()
    core = _strip_root(_strip_root(radical, 0), 1)
    if core.degree >= 1 and sturm_count(core, 0, 1) > 0:
        return False
    return eigenvalue_one_multiplicity(g) >= 1


def normalized_laplacian(g: Graph) -> np.ndarray:
    deg = np.array(g.degrees(), dtype=float)
    if np.any(deg == 0):
        raise IsolatedVertexError("normalized Laplacian needs all degrees >= 1")
    a = np.array(g.adjacency_matrix(), dtype=float)
    inv = 1.0 / np.sqrt(deg)
    return np.eye(g.n) - inv[:, None] * a * inv[None, :]


def jacobi_eigenvalues(mats: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """Cyclic Jacobi on a stack of symmetric matrices; ascending eigenvalues per matrix."""
    a = np.array(mats, dtype=float, copy=True)
    if a.ndim == 2:
        a = a[None]
    k = a.shape[-1]
    off = ~np.eye(k, dtype=bool)
    for _ in range(max_sweeps):
        if np.sqrt((a[:, off] ** 2).sum(axis=1)).max(initial=0.0) < tol:
            return np.sort(np.diagonal(a, axis1=1, axis2=2), axis=1)
        for p in range(k - 1):
            for q in range(p + 1, k):
                apq = a[:, p, q]
                active = np.abs(apq) > 1e-300
                if not active.any():
                    continue
                safe = np.where(active, apq, 1.0)
                theta = (a[:, q, q] - a[:, p, p]) / (2.0 * safe)
                t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
                t = np.where(theta == 0, 1.0, t)
                t = np.where(active, t, 0.0)
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rp, rq = a[:, p, :].copy(), a[:, q, :].copy()
                a[:, p, :] = c[:, None] * rp - s[:, None] * rq
                a[:, q, :] = s[:, None] * rp + c[:, None] * rq
                cp, cq = a[:, :, p].copy(), a[:, :, q].copy()
                a[:, :, p] = c[:, None] * cp - s[:, None] * cq
                a[:, :, q] = s[:, None] * cp + c[:, None] * cq
    raise JacobiConvergenceError(f"no convergence after {max_sweeps} sweeps")


def float_spectrum(g: Graph) -> list[float]:
    """Eigenvalues of the normalized Laplacian by cyclic Jacobi, ascending."""
    return jacobi_eigenvalues(normalized_laplacian(g))[0].tolist()


def float_spectra(graphs: Sequence[Graph]) -> list[list[float]]:
    """Batched :func:`float_spectrum` (graphs grouped by order)."""
    out: list[list[float] | None] = [None] * len(graphs)
    by_order: dict[int, list[int]] = {}
    for i, g in enumerate(graphs):
        by_order.setdefault(g.n, []).append(i)
    for idx in by_order.values():
        for start in range(0, len(idx), 4096):
            chunk = idx[start:start + 4096]
            eig = jacobi_eigenvalues(np.stack([normalized_laplacian(graphs[i]) for i in chunk]))
            for i, row in zip(chunk, eig):
                out[i] = row.tolist()
    return out  # type: ignore[return-value]


def cross_check(profile: MultiplicityProfile, floats: Sequence[float],
                width: float = 1e-10) -> float:
    """Largest distance from a float eigenvalue to its exact interval.

    Multiplicities are matched by pairing the sorted float list with the
    sorted exact list.  Each exact interval is refined to ``width``, seeded
    by the middle float of its group.  Returns ``inf`` on a count mismatch.
    """
    if sum(e.multiplicity for e in profile.spectrum) != len(floats):
        return float("inf")
    xs = sorted(floats)
    worst = 0.0
    pos = 0
    for e in profile.spectrum:
        group = xs[pos:pos + e.multiplicity]
        pos += e.multiplicity
        iv = seeded_refine(e.factor, e.interval, group[len(group) // 2], width)
        worst = max(worst, max(iv.distance(x) for x in group))
    return worst
