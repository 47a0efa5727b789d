"""Collects one line per acceptance criterion for the end-of-session summary."""
RESULTS: dict[int, str] = {}


def record(k: int, ok: bool, detail: str) -> str:
    line = f"ACCEPTANCE {k}: {'PASS' if ok else 'FAIL'} ({detail})"
    RESULTS[k] = line
    return line
