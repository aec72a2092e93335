"""Collects one summary line per acceptance criterion."""

LINES: list[str] = []


def record(number, title: str, ok, detail: str) -> str:
    status = {True: "PASS", False: "FAIL"}.get(ok, ok)
    line = f"[{status}] criterion {number}: {title} | {detail}"
    LINES.append(line)
    print(line)
    return line
