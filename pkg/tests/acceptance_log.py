"""Collects one verdict line per acceptance criterion for the terminal summary."""

RESULTS: dict[int, str] = {}


def record(number: int, title: str, ok: bool, detail: str) -> None:
    RESULTS[number] = f"[{number}] {'PASS' if ok else 'FAIL'} {title}: {detail}"
