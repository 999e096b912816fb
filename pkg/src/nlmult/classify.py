"""Structural and spectral classification of graphs with an eigenvalue of
multiplicity n - 3, and the exhaustive checks built on them."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .algebra import RationalPoly, primitive
from .enumeration import canonical_form, connected_graphs
from .families import (
    ExceptionalCatalog,
    clause_tag,
    cycle,
    load_catalog,
)
from .graph import Graph, bits, diameter, is_connected, write_graph6
from .spectra import (
    FLOAT_TOLERANCE,
    MultiplicityProfile,
    ThetaDescriptor,
    compare,
    cross_check,
    float_spectra,
    has_multiplicity_n_minus_3,
    multiplicity_profile,
    profile_from_charpoly,
    rho_n_minus_1_is_one,
    scaled_charpoly,
    thetas_from_profile,
)
from .structure import (
    check_twin_eigenvalue,
    has_induced,
    independence_number,
    nu_equals_two,
    p4_degree_violations,
    pattern_residuals,
    twin_cliques,
)

log = logging.getLogger(__name__)

VERIFY_RANGE = (5, 9)
LEMMA_RANGE = (5, 8)

_C5_CODE = canonical_form(cycle(5))


@lru_cache(maxsize=1)
def default_catalog() -> ExceptionalCatalog:
    return load_catalog()


# -- structural side ---------------------------------------------------------


@dataclass(frozen=True)
class StructuralVerdict:
    family: str
    """One of Tripartite, CompleteMinusEdge, Exceptional, CycleC5, NotInFamily."""
    evidence: tuple = ()

    @property
    def label(self) -> str:
        if self.family == "Tripartite":
            return "Tripartite(%d,%d,%d)" % self.evidence
        if self.family == "Exceptional":
            return f"Exceptional({self.evidence[0]})"
        return self.family

    @property
    def matched(self) -> bool:
        return self.family != "NotInFamily"


def multipartite_parts(g: Graph) -> list[int] | None:
    """Part sizes if g is complete multipartite (non-adjacency transitive)."""
    full = (1 << g.n) - 1
    seen = 0
    parts = []
    for u in range(g.n):
        if seen >> u & 1:
            continue
        part = full & ~g.adj[u]
        for v in bits(part):
            if (full & ~g.adj[v]) != part:
                return None
        seen |= part
        parts.append(part.bit_count())
    return sorted(parts)


def family_of(g: Graph, catalog: ExceptionalCatalog | None) -> tuple[str, tuple]:
    n = g.n
    parts = multipartite_parts(g)
    if parts is not None and len(parts) == 3:
        return "Tripartite", tuple(parts)
    missing = n * (n - 1) // 2 - g.number_of_edges()
    if missing == 1:
        full = (1 << n) - 1
        u, v = (w for w in range(n) if (full & ~g.adj[w] & ~(1 << w)))
        return "CompleteMinusEdge", (u, v)
    if n == 5 and missing == 5 and all(d == 2 for d in g.degrees()):
        if canonical_form(g) == _C5_CODE:
            return "CycleC5", ()
    if catalog is not None:
        degs = sorted(g.degrees(), reverse=True)
        hits = [e for e in catalog.of_order(n) if e.degree_sequence() == degs]
        if hits:
            code = canonical_form(g)
            for e in hits:
                if e.code == code:
                    return "Exceptional", (e.id, e.clause)
    return "NotInFamily", ()


def structural_classify(g: Graph, catalog: ExceptionalCatalog | None | str = "default") -> StructuralVerdict:
    if g.n < 5:
        raise ValueError("structural_classify needs n >= 5")
    if catalog == "default":
        catalog = default_catalog()
    return StructuralVerdict(*family_of(g, catalog))


# -- spectral side -----------------------------------------------------------


@dataclass(frozen=True)
class SpectralVerdict:
    in_G_n_nminus3: bool
    thetas: tuple[ThetaDescriptor, ...]
    rho_nminus1_is_one: bool
    nu: int
    diam: int | float
    cograph: bool
    has_induced_p4: bool
    profile: MultiplicityProfile = field(repr=False, compare=False)

    @property
    def is_rho1(self) -> bool:
        return any(t.is_rho1 for t in self.thetas)

    @property
    def is_rho_n_minus_1(self) -> bool:
        return any(t.is_rho_n_minus_1 for t in self.thetas)

    @property
    def equals_one(self) -> bool:
        return any(t.equals_one for t in self.thetas)

    @property
    def in_omega(self) -> bool:
        return (
            self.in_G_n_nminus3
            and self.has_induced_p4
            and not self.rho_nminus1_is_one
            and self.nu == 2
            and self.diam == 2
        )


def spectral_classify(g: Graph, profile: MultiplicityProfile | None = None) -> SpectralVerdict:
    if g.n < 5:
        raise ValueError("spectral_classify needs n >= 5")
    if not is_connected(g):
        raise ValueError("spectral_classify needs a connected graph")
    if profile is None:
        profile = multiplicity_profile(g)
    thetas = tuple(thetas_from_profile(profile))
    p4 = has_induced(g, "P4")
    return SpectralVerdict(
        in_G_n_nminus3=bool(thetas),
        thetas=thetas,
        rho_nminus1_is_one=rho_n_minus_1_is_one(g, profile),
        nu=independence_number(g),
        diam=diameter(g),
        cograph=not p4,
        has_induced_p4=p4,
        profile=profile,
    )


def spectral_record(g: Graph, sv: SpectralVerdict, st: StructuralVerdict) -> dict:
    """Report row; ``g`` should already be canonically labelled."""
    factor = sv.thetas[0].factor if sv.thetas else None
    return {
        "g6": write_graph6(g),
        "theta_factor": factor.to_strings() if factor is not None else None,
        "mult": sv.thetas[0].multiplicity if sv.thetas else None,
        "is_rho1": sv.is_rho1,
        "is_rho_n_minus_1": sv.is_rho_n_minus_1,
        "equals_one": sv.equals_one,
        "rho_nminus1_is_one": sv.rho_nminus1_is_one,
        "nu": sv.nu,
        "diam": sv.diam,
        "cograph": sv.cograph,
        "family": st.label,
        "thetas": [
            {
                "interval": t.interval.to_strings(),
                "is_rho1": t.is_rho1,
                "is_rho_n_minus_1": t.is_rho_n_minus_1,
                "equals_one": t.equals_one,
            }
            for t in sv.thetas
        ],
    }


# -- exhaustive scan ---------------------------------------------------------


@dataclass
class PartialScan:
    """Mergeable result of scanning a slice of the graphs of one order."""

    n: int
    scanned: int = 0
    spectral: list[tuple[int, ...]] = field(default_factory=list)
    structural: list[tuple[int, ...]] = field(default_factory=list)
    buckets: dict[int, list[tuple[int, ...]]] = field(default_factory=dict)
    float_checked: int = 0
    float_max_distance: float = 0.0
    float_failures: list[tuple[int, ...]] = field(default_factory=list)

    def merge(self, other: "PartialScan") -> "PartialScan":
        if other.n != self.n:
            raise ValueError("cannot merge scans of different orders")
        self.scanned += other.scanned
        self.spectral += other.spectral
        self.structural += other.structural
        self.float_checked += other.float_checked
        self.float_max_distance = max(self.float_max_distance, other.float_max_distance)
        self.float_failures += other.float_failures
        for h, adjs in other.buckets.items():
            self.buckets.setdefault(h, []).extend(adjs)
        return self


FLOAT_BATCH = 4096


def _float_validate(out: PartialScan, batch: list[tuple[Graph, list[int], int]]) -> None:
    floats = float_spectra([g for g, _, _ in batch])
    for (g, coeffs, det_d), xs in zip(batch, floats):
        profile = profile_from_charpoly(RationalPoly(Fraction(c, det_d) for c in coeffs))
        dist = cross_check(profile, xs)
        out.float_checked += 1
        out.float_max_distance = max(out.float_max_distance, dist)
        if not dist <= FLOAT_TOLERANCE:
            out.float_failures.append(g.adj)
    batch.clear()


def scan_graphs(
    n: int,
    graphs: Iterable[Graph],
    catalog: ExceptionalCatalog | None,
    float_check: bool = False,
) -> PartialScan:
    """One pass per graph: charpoly key, multiplicity test, structural family,
    and optionally the float cross-validation of the full exact spectrum."""
    out = PartialScan(n)
    buckets = out.buckets
    batch: list[tuple[Graph, list[int], int]] = []
    for g in graphs:
        if g.n != n:
            raise ValueError(f"graph of order {g.n} in a scan of order {n}")
        out.scanned += 1
        coeffs, det_d = scaled_charpoly(g)
        buckets.setdefault(hash(tuple(primitive(coeffs))), []).append(g.adj)
        if has_multiplicity_n_minus_3(coeffs, n):
            out.spectral.append(g.adj)
        if family_of(g, catalog)[0] != "NotInFamily":
            out.structural.append(g.adj)
        if float_check:
            batch.append((g, coeffs, det_d))
            if len(batch) >= FLOAT_BATCH:
                _float_validate(out, batch)
    if batch:
        _float_validate(out, batch)
    return out


def _scan_slice(args) -> PartialScan:
    n, part, parts, catalog, float_check = args
    return scan_graphs(n, connected_graphs(n, part, parts), catalog, float_check)


def _check_order(n: int, bounds: tuple[int, int], what: str) -> None:
    lo, hi = bounds
    if not isinstance(n, int) or not lo <= n <= hi:
        raise ValueError(f"{what} supports {lo} <= n <= {hi}, got {n}")


def scan_order(
    n: int,
    graphs: Iterable[Graph] | None = None,
    catalog: ExceptionalCatalog | None | str = "default",
    jobs: int = 1,
    float_check: bool = False,
) -> PartialScan:
    """Scan all connected graphs of order n (or the given ones)."""
    if catalog == "default":
        catalog = default_catalog()
    if graphs is not None:
        return scan_graphs(n, graphs, catalog, float_check)
    if jobs <= 1:
        return _scan_slice((n, 0, 1, catalog, float_check))
    from multiprocessing import get_context

    parts = jobs * 8
    tasks = [(n, i, parts, catalog, float_check) for i in range(parts)]
    total = PartialScan(n)
    with get_context("spawn").Pool(jobs) as pool:
        for partial in pool.imap_unordered(_scan_slice, tasks):
            total.merge(partial)
    return total


# -- reports -----------------------------------------------------------------


@dataclass
class TheoremReport:
    order: int
    scanned: int
    spectral: list[dict]
    spectral_set: list[str]
    structural_set: list[str]
    mismatches: list[dict]
    problem_counterexamples: list[dict]
    clause_histogram: dict[str, int]
    verdicts: dict[str, tuple[SpectralVerdict, StructuralVerdict]] = field(repr=False, default_factory=dict)

    @property
    def verified(self) -> bool:
        return not self.mismatches

    @property
    def problem_answered(self) -> bool:
        return not self.problem_counterexamples

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "scanned": self.scanned,
            "spectral": self.spectral,
            "mismatches": self.mismatches,
            "problem_counterexamples": self.problem_counterexamples,
            "clause_histogram": self.clause_histogram,
        }


def _canonical(adjs: Iterable[tuple[int, ...]], n: int) -> dict[str, Graph]:
    from .enumeration import canonical_graph

    out = {}
    for adj in adjs:
        cg = canonical_graph(Graph(n, adj))
        out[write_graph6(cg)] = cg
    return out


def verify_theorem(
    n: int,
    scan: PartialScan | None = None,
    catalog: ExceptionalCatalog | None | str = "default",
    jobs: int = 1,
) -> TheoremReport:
    _check_order(n, VERIFY_RANGE, "verify_theorem")
    if catalog == "default":
        catalog = default_catalog()
    if scan is None:
        scan = scan_order(n, catalog=catalog, jobs=jobs)
    spectral = _canonical(scan.spectral, n)
    structural = _canonical(scan.structural, n)
    mismatches = []
    records = []
    problems = []
    hist: dict[str, int] = {}
    verdicts = {}
    for code in sorted(set(spectral) | set(structural)):
        g = spectral.get(code) or structural[code]
        sv = spectral_classify(g)
        st = structural_classify(g, catalog)
        verdicts[code] = (sv, st)
        if code in spectral:
            records.append(spectral_record(g, sv, st))
            kind = st.evidence[1] if st.family == "Exceptional" else st.family
            hist[kind] = hist.get(kind, 0) + 1
        if sv.in_G_n_nminus3 != (code in spectral):
            mismatches.append({"g6": code, "kind": "scan_disagrees_with_profile"})
        if (code in spectral) != (code in structural):
            mismatches.append(
                {
                    "g6": code,
                    "kind": "spectral_only" if code in spectral else "structural_only",
                    "family": st.label,
                    "rho_nminus1_is_one": sv.rho_nminus1_is_one,
                    "nu": sv.nu,
                    "diam": sv.diam,
                    "cograph": sv.cograph,
                }
            )
        if sv.in_G_n_nminus3:
            # clause (i): rho_{n-1} = 1 exactly for the tripartite and K_n - e families
            ones = st.family in ("Tripartite", "CompleteMinusEdge")
            if sv.rho_nminus1_is_one != ones:
                mismatches.append({"g6": code, "kind": "clause_i", "family": st.label})
            if st.family == "Exceptional":
                tag = clause_tag(g, sv.rho_nminus1_is_one, sv.nu, sv.diam, sv.cograph)
                if tag != st.evidence[1]:
                    mismatches.append({"g6": code, "kind": "clause_tag", "expected": st.evidence[1], "found": tag})
            if n >= 6 and sv.nu == 2 and sv.is_rho1:
                problems.append({"g6": code, "family": st.label})
    return TheoremReport(
        order=n,
        scanned=scan.scanned,
        spectral=records,
        spectral_set=sorted(spectral),
        structural_set=sorted(structural),
        mismatches=mismatches,
        problem_counterexamples=problems,
        clause_histogram=dict(sorted(hist.items())),
        verdicts=verdicts,
    )


@dataclass
class DSReport:
    order: int
    entries: list[dict]

    @property
    def verified(self) -> bool:
        return all(not e["mates"] for e in self.entries)

    def to_json(self) -> list[dict]:
        return self.entries


def ds_check(
    n: int,
    scan: PartialScan | None = None,
    catalog: ExceptionalCatalog | None | str = "default",
    jobs: int = 1,
) -> DSReport:
    """Cospectral mates of every graph whose largest eigenvalue has multiplicity n - 3."""
    _check_order(n, VERIFY_RANGE, "ds_check")
    if scan is None:
        scan = scan_order(n, catalog=catalog, jobs=jobs)
    entries = []
    for code, g in sorted(_canonical(scan.spectral, n).items()):
        sv = spectral_classify(g)
        if not sv.is_rho1:
            continue
        key = tuple(primitive(scaled_charpoly(g)[0]))
        mates = set()
        for adj in scan.buckets.get(hash(key), []):
            h = Graph(n, adj)
            if tuple(primitive(scaled_charpoly(h)[0])) != key:
                continue
            other = canonical_form(h)
            if other != code:
                mates.add(other)
        entries.append({"g6": code, "key": [str(c) for c in key], "mates": sorted(mates)})
    return DSReport(n, entries)


# -- lemma sweep -------------------------------------------------------------


def _is_rho2_bound_excluded(g: Graph) -> bool:
    parts = multipartite_parts(g)
    if parts is not None and len(parts) == 2:
        return True
    # complete split: a twin-clique hub of size a >= 2 dominating an independent rest
    full = (1 << g.n) - 1
    hub = [u for u in range(g.n) if g.adj[u] | 1 << u == full]
    if len(hub) < 2:
        return False
    hub_mask = sum(1 << u for u in hub)
    return all(g.adj[u] & ~hub_mask == 0 for u in range(g.n) if not hub_mask >> u & 1)


def lemma_violations(g: Graph, profile: MultiplicityProfile | None = None) -> list[dict]:
    """Every lemma property applicable to g that fails; empty when all hold."""
    if profile is None:
        profile = multiplicity_profile(g)
    n = g.n
    code = write_graph6(g)
    out = []
    spec = profile.expanded()
    if n >= 2 and not g.is_complete() and compare(spec[1], 1) > 0:
        out.append({"g6": code, "lemma": "rho_n_minus_1_le_1"})
    if n >= 4 and not _is_rho2_bound_excluded(g) and compare(spec[-2], Fraction(n - 1, n - 2)) < 0:
        out.append({"g6": code, "lemma": "rho2_lower_bound"})
    for k in twin_cliques(g):
        if not check_twin_eigenvalue(g, k):
            out.append({"g6": code, "lemma": "twin_clique", "clique": sorted(k)})
    if n >= 5:
        sv = spectral_classify(g, profile)
        if sv.in_G_n_nminus3 and not sv.rho_nminus1_is_one and sv.equals_one:
            out.append({"g6": code, "lemma": "theta_ne_1"})
        if sv.in_omega:
            for pid, emb, r in pattern_residuals(g, profile):
                out.append({"g6": code, "lemma": "residual", "pattern": pid, "map": list(emb), "residual": r.to_strings()})
            for a, b in p4_degree_violations(g):
                out.append({"g6": code, "lemma": "p4_degrees", "paths": [list(a), list(b)]})
        if nu_equals_two(g) != (sv.nu == 2):
            out.append({"g6": code, "lemma": "nu_fast_path"})
    return out


@dataclass
class LemmaReport:
    order: int
    scanned: int
    omega_graphs: list[str]
    violations: list[dict]

    @property
    def verified(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "scanned": self.scanned,
            "omega_graphs": self.omega_graphs,
            "violations": self.violations,
        }


def lemma_sweep(n: int, graphs: Sequence[Graph] | None = None) -> LemmaReport:
    _check_order(n, LEMMA_RANGE, "lemma_sweep")
    scanned = 0
    omega = []
    violations = []
    for g in graphs if graphs is not None else connected_graphs(n):
        scanned += 1
        profile = multiplicity_profile(g)
        violations += lemma_violations(g, profile)
        if thetas_from_profile(profile) and spectral_classify(g, profile).in_omega:
            omega.append(canonical_form(g))
    return LemmaReport(n, scanned, sorted(omega), violations)
