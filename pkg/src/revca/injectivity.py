"""Independent injectivity decision for the global map, with witnesses.

The decision builds the pair graph of the rule's de Bruijn automaton: nodes
are ordered pairs of (D-1)-bit window prefixes, and an edge joins two pairs
when each side can be advanced by one input bit while producing the same
output bit.  The global map fails to be injective exactly when some cycle of
this graph passes through an off-diagonal node; walking such a cycle yields
two distinct periodic configurations with equal images, which is returned as
the witness.  The construction is quadratic in the number of window prefixes,
so diameters through 8 are cheap.

Exhaustive rule-space sweeps provide ground truth: every table of a diameter
is scanned at D <= 4; D = 5 is gated behind an explicit flag and prunes the
2^32 tables to the balanced ones (a necessary condition for injectivity) and
then through vectorized small-period permutation filters before the exact
pair-graph decision.  D >= 6 is refused outright.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

import numpy as np

from . import engine
from .rules import RuleTable, from_wolfram, to_wolfram, trivial_tables

LONG_SWEEP_DIAMETER = 5
MAX_SWEEP_DIAMETER = 5


@dataclass(frozen=True)
class InjectivityVerdict:
    injective: bool
    witness: tuple[str, str] | None = None

    def __str__(self) -> str:
        if self.injective:
            return "injective"
        w1, w2 = self.witness
        return f"not injective (configurations {w1} and {w2} share an image)"


# ---------------------------------------------------------------------------
# Pair-graph construction and cycle detection.

_EDGE_TEMPLATES: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]] = {}


def _edge_template(d: int):
    """Rule-independent edge skeleton of the pair graph for one diameter.

    Arrays (src, dst, wa, wb) over all node/bit combinations: filtering rows
    by equal rule output at window values wa and wb yields the graph.
    """
    if d not in _EDGE_TEMPLATES:
        v = 1 << (d - 1)
        mask = v - 1
        u1, u2, b1, b2 = np.meshgrid(
            np.arange(v), np.arange(v), np.arange(2), np.arange(2), indexing="ij")
        u1, u2, b1, b2 = (x.ravel() for x in (u1, u2, b1, b2))
        wa = (u1 << 1) | b1
        wb = (u2 << 1) | b2
        src = u1 * v + u2
        dst = ((u1 << 1 | b1) & mask) * v + ((u2 << 1 | b2) & mask)
        _EDGE_TEMPLATES[d] = tuple(
            np.ascontiguousarray(x, dtype=np.int64) for x in (src, dst, wa, wb))
    return _EDGE_TEMPLATES[d]


def _equal_output_graph(d: int, bits: Sequence[int]):
    """CSR adjacency (indptr, targets) of the equal-output pair graph."""
    src, dst, wa, wb = _edge_template(d)
    table = np.fromiter(bits, dtype=np.uint8, count=len(bits))
    keep = table[wa] == table[wb]
    s, t = src[keep], dst[keep]
    n = (1 << (d - 1)) ** 2
    order = np.argsort(s, kind="stable")
    counts = np.bincount(s, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, t[order]


def _cyclic_offdiagonal_node(d: int, indptr, targets) -> int | None:
    """Some off-diagonal pair-graph node lying on a cycle, or None.

    Iterative Tarjan; a strongly connected component is cyclic when it has
    more than one node or a self-loop.
    """
    v_count = 1 << (d - 1)
    n = v_count * v_count
    index = [-1] * n
    low = [0] * n
    on_stack = bytearray(n)
    stack: list[int] = []
    counter = 0
    ip = indptr.tolist()
    tg = targets.tolist()
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, ip[root])]
        while work:
            v, ptr = work[-1]
            if ptr == ip[v]:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = 1
            advanced = False
            while ptr < ip[v + 1]:
                w = tg[ptr]
                ptr += 1
                if index[w] == -1:
                    work[-1] = (v, ptr)
                    work.append((w, ip[w]))
                    advanced = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                if low[v] < low[pv]:
                    low[pv] = low[v]
            if low[v] == index[v]:
                scc = []
                while True:
                    w = stack.pop()
                    on_stack[w] = 0
                    scc.append(w)
                    if w == v:
                        break
                cyclic = len(scc) > 1 or v in tg[ip[v]:ip[v + 1]]
                if cyclic:
                    for w in scc:
                        if w // v_count != w % v_count:
                            return w
    return None


def _offdiagonal_self_loop(d: int, indptr, targets) -> int | None:
    """Off-diagonal node with a self-loop; such a node yields a length-1 witness."""
    v_count = 1 << (d - 1)
    for z in range(v_count * v_count):
        if z // v_count == z % v_count:
            continue
        lo, hi = int(indptr[z]), int(indptr[z + 1])
        for ptr in range(lo, hi):
            if int(targets[ptr]) == z:
                return z
    return None


def _witness_from_node(d: int, indptr, targets, z: int) -> tuple[str, str]:
    """Two distinct equal-image periodic words from a shortest cycle through z."""
    v_count = 1 << (d - 1)
    parent: dict[int, int] = {}
    frontier = deque()
    for ptr in range(indptr[z], indptr[z + 1]):
        w = int(targets[ptr])
        if w not in parent:
            parent[w] = z
            frontier.append(w)
    while frontier:
        u = frontier.popleft()
        if u == z:
            break
        for ptr in range(indptr[u], indptr[u + 1]):
            w = int(targets[ptr])
            if w not in parent:
                parent[w] = u
                frontier.append(w)
    # reconstruct z -> ... -> z
    path = [z]
    u = parent[z]
    while u != z:
        path.append(u)
        u = parent[u]
    path.append(z)
    path.reverse()
    # the bit consumed on each edge is the low bit of the successor's prefix
    c1 = "".join(str((node // v_count) & 1) for node in path[1:])
    c2 = "".join(str((node % v_count) & 1) for node in path[1:])
    return c1, c2


def debruijn_injective(rt: RuleTable) -> InjectivityVerdict:
    """Decide injectivity of the global map; witnesses accompany rejections.

    The verdict covers periodic configurations of every length at once, and
    by the standard periodic/unbounded correspondence the unbounded lattice
    as well.  Witness length never exceeds the pair-graph node count plus the
    diameter.
    """
    if rt.diameter == 1:
        if rt.bits[0] != rt.bits[1]:
            return InjectivityVerdict(True)
        return InjectivityVerdict(False, ("0", "1"))
    indptr, targets = _equal_output_graph(rt.diameter, rt.bits)
    z = _cyclic_offdiagonal_node(rt.diameter, indptr, targets)
    if z is None:
        return InjectivityVerdict(True)
    looped = _offdiagonal_self_loop(rt.diameter, indptr, targets)
    if looped is not None:
        z = looped
    return InjectivityVerdict(False, _witness_from_node(rt.diameter, indptr, targets, z))


# ---------------------------------------------------------------------------
# Periodic permutation checks.

def periodic_bijective(rt: RuleTable, n: int,
                       bound: int = engine.DEFAULT_EXHAUSTIVE_BOUND) -> bool:
    """True iff the map permutes all 2^n configurations of length n."""
    if n < 1:
        raise ValueError("period must be >= 1")
    if n > bound:
        raise engine.ExhaustiveBoundError(
            f"2^{n} configurations exceed the exhaustive bound {bound}")
    seen = np.zeros(1 << n, dtype=bool)
    cells = engine.all_configs(n)
    for lo in range(0, len(cells), 1 << 14):
        images = engine.pack_configs(engine.batch_step(rt, cells[lo:lo + (1 << 14)]))
        seen[images] = True
    return bool(seen.all())


def cross_validate(rt: RuleTable, n_max: int) -> bool:
    """Consistency of the pair-graph verdict with direct periodic checks.

    Injective rules must permute every period up to n_max; rejected rules
    must carry a witness pair that genuinely collides, and when the witness
    length is within reach the permutation check at that length must fail.
    """
    verdict = debruijn_injective(rt)
    if verdict.injective:
        return all(periodic_bijective(rt, n) for n in range(1, n_max + 1))
    w1, w2 = verdict.witness
    if w1 == w2 or len(w1) != len(w2) or engine.step(rt, w1) != engine.step(rt, w2):
        return False
    if len(w1) <= n_max:
        return not periodic_bijective(rt, len(w1))
    return True


# ---------------------------------------------------------------------------
# Exhaustive rule-space sweeps.

def _trivial_wolframs(d: int) -> frozenset[int]:
    return frozenset(to_wolfram(t) for t in trivial_tables(d))


def sweep_chunks(diameter: int, chunk_size: int = 1 << 12) -> list[tuple[int, int]]:
    """Ordered [lo, hi) index ranges partitioning the full-table scan."""
    total = 1 << (1 << diameter)
    return [(lo, min(lo + chunk_size, total)) for lo in range(0, total, chunk_size)]


def scan_chunk(diameter: int, lo: int, hi: int,
               exclude_trivial: bool = False) -> list[int]:
    """Wolfram numbers in [lo, hi) whose global map is injective, ascending."""
    skip = _trivial_wolframs(diameter) if exclude_trivial else frozenset()
    size = 1 << diameter
    found = []
    for w in range(lo, hi):
        if w in skip:
            continue
        bits = [(w >> v) & 1 for v in range(size)]
        if diameter == 1:
            if bits[0] != bits[1]:
                found.append(w)
            continue
        indptr, targets = _equal_output_graph(diameter, bits)
        if _cyclic_offdiagonal_node(diameter, indptr, targets) is None:
            found.append(w)
    return found


_MASK_CACHE: dict[int, list[np.ndarray]] = {}


def _masks_by_popcount(width: int) -> list[np.ndarray]:
    if width not in _MASK_CACHE:
        by: list[list[int]] = [[] for _ in range(width + 1)]
        for m in range(1 << width):
            by[bin(m).count("1")].append(m)
        _MASK_CACHE[width] = [np.asarray(v, dtype=np.uint64) for v in by]
    return _MASK_CACHE[width]


def _cyclic_window_values(d: int, n: int) -> np.ndarray:
    """Window value of each cell of each length-n configuration (anchor 0)."""
    out = np.empty((1 << n, n), dtype=np.uint8)
    for c in range(1 << n):
        cells = [(c >> i) & 1 for i in range(n)]
        for i in range(n):
            v = 0
            for t in range(d):
                v = (v << 1) | cells[(i + t) % n]
            out[c, i] = v
    return out


_WV_CACHE: dict[tuple[int, int], np.ndarray] = {}


def _permutes_period(tables: np.ndarray, d: int, n: int) -> np.ndarray:
    """Boolean mask of tables that permute all length-n configurations.

    Vectorized over a whole batch of table integers; used as a cheap
    necessary-condition filter ahead of the exact decision.
    """
    if n > 8:
        raise ValueError("vectorized permutation filter supports periods <= 8")
    key = (d, n)
    if key not in _WV_CACHE:
        _WV_CACHE[key] = _cyclic_window_values(d, n)
    wv = _WV_CACHE[key]
    m = 1 << n
    images = np.zeros((tables.size, m), dtype=np.uint8)
    for c in range(m):
        img = np.zeros(tables.size, dtype=np.uint8)
        for i in range(n):
            img |= (((tables >> np.uint64(wv[c, i])) & np.uint64(1)) << np.uint64(i)).astype(np.uint8)
        images[:, c] = img
    images.sort(axis=1)
    return np.all(images == np.arange(m, dtype=np.uint8), axis=1)


def balanced_sweep_blocks(diameter: int) -> list[tuple[int, int, int]]:
    """Ordered work blocks (ones_in_upper_half, slice_start, slice_stop) for
    the balanced-table sweep of one diameter."""
    width = 1 << (diameter - 1)
    half = 1 << (diameter - 1)
    by = _masks_by_popcount(width)
    blocks = []
    for j in range(half + 1):
        if j > width or half - j > width:
            continue
        ups, los = by[j], by[half - j]
        if not ups.size or not los.size:
            continue
        step_u = max(1, (4 << 20) // los.size)
        for s in range(0, ups.size, step_u):
            blocks.append((j, s, min(s + step_u, ups.size)))
    return blocks


def scan_balanced_block(diameter: int, block: tuple[int, int, int],
                        filter_periods: Sequence[int] = (4, 5, 6)) -> list[int]:
    """Injective Wolfram numbers within one balanced-sweep block.

    Balance and small-period permutation are necessary conditions, so the
    prefilters cannot drop an injective table; survivors get the exact
    pair-graph decision.
    """
    width = 1 << (diameter - 1)
    j, s, e = block
    by = _masks_by_popcount(width)
    ups = by[j][s:e]
    los = by[(1 << (diameter - 1)) - j]
    tables = ((ups[:, None] << np.uint64(width)) | los[None, :]).ravel()
    for n in filter_periods:
        if not tables.size:
            break
        tables = tables[_permutes_period(tables, diameter, n)]
    size = 1 << diameter
    found = []
    for w in sorted(int(t) for t in tables):
        bits = [(w >> v) & 1 for v in range(size)]
        indptr, targets = _equal_output_graph(diameter, bits)
        if _cyclic_offdiagonal_node(diameter, indptr, targets) is None:
            found.append(w)
    return found


def scan_unit(diameter: int, unit) -> list[int]:
    """Dispatch one sweep work unit; picklable, for worker pools."""
    if diameter < LONG_SWEEP_DIAMETER:
        lo, hi = unit
        return scan_chunk(diameter, lo, hi)
    return scan_balanced_block(diameter, unit)


def exhaustive_injective(diameter: int, exclude_trivial: bool = False,
                         allow_long: bool = False,
                         progress: Callable[[int, int], None] | None = None,
                         ) -> Iterator[RuleTable]:
    """Every rule table of one diameter whose global map is injective.

    Tables stream in ascending Wolfram order.  Diameter 5 scans the 601M
    balanced tables and must be requested explicitly with ``allow_long``;
    diameters above 5 are refused as infeasible.
    """
    if diameter > MAX_SWEEP_DIAMETER:
        raise ValueError(
            f"exhaustive sweep refused for diameter {diameter}: "
            f"2^(2^{diameter}) tables are out of reach")
    if diameter >= LONG_SWEEP_DIAMETER and not allow_long:
        raise ValueError(
            f"diameter {diameter} sweep is long-running; pass allow_long=True")
    if diameter < LONG_SWEEP_DIAMETER:
        chunks = sweep_chunks(diameter)
        for i, (lo, hi) in enumerate(chunks):
            for w in scan_chunk(diameter, lo, hi, exclude_trivial):
                yield from_wolfram(diameter, w)
            if progress:
                progress(i + 1, len(chunks))
    else:
        skip = _trivial_wolframs(diameter) if exclude_trivial else frozenset()
        blocks = balanced_sweep_blocks(diameter)
        found: list[int] = []
        for i, block in enumerate(blocks):
            found.extend(scan_balanced_block(diameter, block))
            if progress:
                progress(i + 1, len(blocks))
        for w in sorted(found):
            if w not in skip:
                yield from_wolfram(diameter, w)
