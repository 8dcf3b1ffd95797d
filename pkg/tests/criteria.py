"""Collects one verdict line per acceptance criterion for the terminal summary."""
LINES = []


def record(key, status, detail, seconds=None):
    t = f" [{seconds:.1f}s]" if seconds is not None else ""
    LINES.append(f"criterion {key:<4} {status:<20} {detail}{t}")
    print(LINES[-1])
