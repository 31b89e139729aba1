"""Periodic-boundary global map: single steps, orbits, involution checks.

Configurations are cyclic binary words written as strings, leftmost character
at index 0.  The window feeding cell i spans cells i-anchor .. i-anchor+D-1,
indices wrapped modulo the word length, so words shorter than the diameter
simply wrap multiple times.
"""

from __future__ import annotations

import numpy as np

from .rules import RuleTable

DEFAULT_EXHAUSTIVE_BOUND = 20


class ExhaustiveBoundError(ValueError):
    """Requested period exceeds the exhaustive bound; sample instead."""


def _check_word(c: str) -> str:
    if not c or set(c) - {"0", "1"}:
        raise ValueError(f"configuration must be a nonempty binary word: {c!r}")
    return c


def step(rt: RuleTable, c: str) -> str:
    """Apply the global map once."""
    _check_word(c)
    n = len(c)
    d, j, bits = rt.diameter, rt.anchor, rt.bits
    out = []
    for i in range(n):
        v = 0
        for t in range(d):
            v = (v << 1) | (c[(i - j + t) % n] == "1")
        out.append("01"[bits[v]])
    return "".join(out)


def shift(c: str, k: int) -> str:
    """Cyclic rotation to the right by k (left for negative k)."""
    _check_word(c)
    k %= len(c)
    return c[-k:] + c[:-k] if k else c


def orbit_period(rt: RuleTable, c: str, max_steps: int) -> int | None:
    """Smallest t <= max_steps with step^t(c) == c, else None (exhausted)."""
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    cur = c
    for t in range(1, max_steps + 1):
        cur = step(rt, cur)
        if cur == c:
            return t
    return None


def space_time(rt: RuleTable, init: str, steps: int) -> list[str]:
    """Trajectory [init, step(init), ..., step^steps(init)]."""
    if steps < 0:
        raise ValueError("steps must be >= 0")
    rows = [_check_word(init)]
    for _ in range(steps):
        rows.append(step(rt, rows[-1]))
    return rows


# ---------------------------------------------------------------------------
# Vectorized batch evaluation over many configurations at once.

def _window_index(n: int, d: int, j: int) -> np.ndarray:
    return (np.arange(n)[:, None] - j + np.arange(d)[None, :]) % n


def batch_step(rt: RuleTable, cells: np.ndarray) -> np.ndarray:
    """Global map applied to a (configs, n) uint8 cell matrix row-wise."""
    n = cells.shape[1]
    d = rt.diameter
    idx = _window_index(n, d, rt.anchor)
    weights = (1 << np.arange(d - 1, -1, -1)).astype(np.int64)
    values = cells[:, idx].astype(np.int64) @ weights
    table = np.fromiter(rt.bits, dtype=np.uint8, count=len(rt.bits))
    return table[values]


def all_configs(n: int) -> np.ndarray:
    """Cell matrix of every length-n configuration; row index encodes the word."""
    ints = np.arange(1 << n, dtype=np.int64)
    return ((ints[:, None] >> np.arange(n)) & 1).astype(np.uint8)


def pack_configs(cells: np.ndarray) -> np.ndarray:
    n = cells.shape[1]
    return (cells.astype(np.int64) << np.arange(n)).sum(axis=1)


def check_involution(rt: RuleTable, n: int,
                     bound: int = DEFAULT_EXHAUSTIVE_BOUND) -> bool:
    """True iff applying the map twice fixes every length-n configuration."""
    if n < 1:
        raise ValueError("period must be >= 1")
    if n > bound:
        raise ExhaustiveBoundError(
            f"2^{n} configurations exceed the exhaustive bound {bound}; "
            "use random sampling for long periods")
    cells = all_configs(n)
    for lo in range(0, len(cells), 1 << 14):
        chunk = cells[lo:lo + (1 << 14)]
        if not np.array_equal(batch_step(rt, batch_step(rt, chunk)), chunk):
            return False
    return True
