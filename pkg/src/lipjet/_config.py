"""Runtime knobs shared across modules."""

import os


def worker_count():
    """Worker-thread cap for parallel scans.

    Controlled by the LIPJET_THREADS environment variable; defaults to
    the machine's CPU count. Values below 1 are clamped to 1.
    """
    raw = os.environ.get("LIPJET_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError as exc:
        raise ValueError(
            f"LIPJET_THREADS must be an integer, got {raw!r}"
        ) from exc
    return max(1, n)
