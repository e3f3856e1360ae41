"""Per-criterion verdict lines collected while the acceptance tests run."""

LINES = {}


def record(number, ok, detail):
    LINES[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
