"""Collects one pass/fail line per acceptance criterion for the terminal summary."""

LINES = {}


def record(number, title, ok, elapsed, limit=None):
    budget = f" (limit {limit:g} s)" if limit is not None else ""
    status = "PASS" if ok else "FAIL"
    line = f"criterion {number:2d} {status}  {title}  [{elapsed:.2f} s{budget}]"
    LINES[number] = line
    print(line)
