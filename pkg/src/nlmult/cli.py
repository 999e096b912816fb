"""Command-line front end.

Exit codes: 0 verified, 1 a checked claim failed, 2 usage error,
3 internal error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from contextlib import contextmanager
from typing import Iterator, TextIO

from .classify import (
    LEMMA_RANGE,
    VERIFY_RANGE,
    ds_check,
    lemma_sweep,
    scan_order,
    spectral_classify,
    spectral_record,
    structural_classify,
    verify_theorem,
)
from .enumeration import canonical_graph, connected_graphs, ingest_graph6
from .families import bootstrap_exceptional_catalog, load_catalog, save_catalog
from .graph import Graph6Error, is_connected, parse_graph6, write_graph6
from .spectra import cross_check, float_spectra

log = logging.getLogger("nlmult")

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_orders(args: argparse.Namespace) -> list[int]:
    if args.order is not None and args.orders is not None:
        raise UsageError("give --order or --orders, not both")
    if args.order is not None:
        return [args.order]
    if args.orders is None:
        raise UsageError("an order is required (--order N or --orders A..B)")
    lo, sep, hi = args.orders.partition("..")
    try:
        a, b = int(lo), int(hi if sep else lo)
    except ValueError:
        raise UsageError(f"bad order range {args.orders!r}; expected A..B") from None
    if a > b:
        raise UsageError(f"empty order range {args.orders!r}")
    return list(range(a, b + 1))


def _guard(orders: list[int], bounds: tuple[int, int], what: str) -> None:
    lo, hi = bounds
    bad = [n for n in orders if not lo <= n <= hi]
    if bad:
        raise UsageError(f"{what} supports orders {lo}..{hi}, got {bad}")


def _catalog(args: argparse.Namespace):
    if args.catalog:
        return load_catalog(args.catalog)
    return "default"


@contextmanager
def _out(path: str | None) -> Iterator[TextIO]:
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _dump(obj, path: str | None) -> None:
    with _out(path) as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def _float_section(pairs) -> dict:
    """pairs: (g6, profile, graph)."""
    if not pairs:
        return {"checked": 0, "max_distance": 0.0}
    floats = float_spectra([g for _, _, g in pairs])
    dist = {code: cross_check(p, f) for (code, p, _), f in zip(pairs, floats)}
    return {"checked": len(dist), "max_distance": max(dist.values()), "per_graph": dict(sorted(dist.items()))}


# -- subcommands -------------------------------------------------------------


def cmd_analyze(args: argparse.Namespace) -> int:
    catalog = _catalog(args)
    errors: list = []
    source = sys.stdin if args.input in (None, "-") else open(args.input)
    warnings = 0
    try:
        with _out(args.output) as fh:
            for g in ingest_graph6(source, on_error=args.on_error, errors=errors):
                if not is_connected(g):
                    warnings += 1
                    log.warning("skipping disconnected graph %s", write_graph6(g))
                    rec = {"g6": write_graph6(g), "skipped": "disconnected"}
                elif g.n < 5:
                    warnings += 1
                    rec = {"g6": write_graph6(g), "skipped": "order below 5"}
                else:
                    sv = spectral_classify(g)
                    st = structural_classify(g, catalog)
                    rec = spectral_record(g, sv, st)
                    rec["in_G_n_nminus3"] = sv.in_G_n_nminus3
                    rec["has_induced_p4"] = sv.has_induced_p4
                    rec["family_evidence"] = list(st.evidence)
                    if args.with_float_check:
                        rec["float_check"] = _float_section([(rec["g6"], sv.profile, g)])
                fh.write(json.dumps(rec) + "\n")
    finally:
        if source is not sys.stdin:
            source.close()
    if warnings or errors:
        log.warning("%d graphs skipped, %d malformed lines", warnings, len(errors))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    orders = parse_orders(args)
    _guard(orders, VERIFY_RANGE, "verify")
    catalog = _catalog(args)
    out, ok = [], True
    for n in orders:
        report = verify_theorem(n, catalog=catalog, jobs=args.jobs)
        obj = report.to_json()
        if args.with_float_check:
            obj["float_check"] = _float_section(
                [(code, sv.profile, parse_graph6(code)) for code, (sv, _) in report.verdicts.items()]
            )
        out.append(obj)
        ok &= report.verified and (n < 6 or report.problem_answered)
        log.info("order %d: %d scanned, %d mismatches", n, report.scanned, len(report.mismatches))
    _dump(out, args.output)
    return EXIT_OK if ok else EXIT_FALSE


def cmd_ds(args: argparse.Namespace) -> int:
    orders = parse_orders(args)
    _guard(orders, VERIFY_RANGE, "ds")
    catalog = _catalog(args)
    out, ok = [], True
    for n in orders:
        scan = scan_order(n, catalog=catalog, jobs=args.jobs)
        report = ds_check(n, scan, catalog=catalog)
        out.append({"order": n, "scanned": scan.scanned, "ds": report.to_json()})
        ok &= report.verified
    _dump(out, args.output)
    return EXIT_OK if ok else EXIT_FALSE


def cmd_lemmas(args: argparse.Namespace) -> int:
    orders = parse_orders(args)
    _guard(orders, LEMMA_RANGE, "lemmas")
    out, ok = [], True
    for n in orders:
        report = lemma_sweep(n)
        out.append(report.to_json())
        ok &= report.verified
    _dump(out, args.output)
    return EXIT_OK if ok else EXIT_FALSE


def cmd_bootstrap(args: argparse.Namespace) -> int:
    n_max = max(parse_orders(args))
    _guard([n_max], VERIFY_RANGE, "bootstrap")
    catalog = bootstrap_exceptional_catalog(n_max)
    if args.output and args.output != "-":
        save_catalog(catalog, args.output)
    else:
        for e in catalog:
            sys.stdout.write(write_graph6(e.graph) + "\n")
    unclassified = [e.id for e in catalog if e.clause == "unclassified"]
    return EXIT_FALSE if unclassified else EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    orders = parse_orders(args)
    _guard(orders, (1, 10), "enumerate")
    with _out(args.output) as fh:
        for n in orders:
            for g in connected_graphs(n):
                fh.write(write_graph6(canonical_graph(g) if args.canonical else g) + "\n")
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "verify": cmd_verify,
    "ds": cmd_ds,
    "lemmas": cmd_lemmas,
    "bootstrap": cmd_bootstrap,
    "enumerate": cmd_enumerate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nlmult", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--order", type=int)
        p.add_argument("--orders", metavar="A..B")
        p.add_argument("--input", metavar="PATH")
        p.add_argument("--output", metavar="PATH")
        p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
        p.add_argument("--on-error", choices=("skip", "abort"), default="abort")
        p.add_argument("--catalog", metavar="PATH")
        p.add_argument("--with-float-check", action="store_true")
        if name == "enumerate":
            p.add_argument("--canonical", action="store_true", help="emit canonically labelled graphs")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if args.jobs < 1:
        parser.print_usage(sys.stderr)
        print("nlmult: --jobs must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"nlmult {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (Graph6Error, OSError) as exc:
        print(f"nlmult {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        log.exception("internal error")
        print(f"nlmult {args.command}: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
