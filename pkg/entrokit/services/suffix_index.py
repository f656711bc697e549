"""
Suffix array, inverse ranks and LCP array over a whole sequence.

The suffix array is built by prefix doubling on numpy sort keys and the LCP
array by Kasai's scan. Longest matches against any window of earlier
positions then reduce to the nearest window members in rank order, found
with a Fenwick tree over ranks plus a range-minimum tree over the LCP array.
"""

import logging
from dataclasses import dataclass

import numpy as np
from numba import njit

logger = logging.getLogger(__name__)

_NO_LIMIT = 1 << 62


def build_suffix_array(symbols: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return (suffix array, rank) for ``symbols``; shorter suffixes sort first on ties."""
    n = symbols.size
    if n == 0:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty
    _, rank = np.unique(symbols, return_inverse=True)
    rank = rank.astype(np.int64)
    h = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        if h < n:
            second[: n - h] = rank[h:]
        key = rank * (n + 1) + (second + 1)
        sa = np.argsort(key, kind="stable")
        sorted_key = key[sa]
        fresh = np.empty(n, dtype=np.int64)
        fresh[0] = 0
        np.cumsum(sorted_key[1:] != sorted_key[:-1], out=fresh[1:])
        rank = np.empty(n, dtype=np.int64)
        rank[sa] = fresh
        if fresh[-1] == n - 1 or h >= n:
            return sa.astype(np.int64), rank
        h *= 2


@njit(cache=True, nogil=True)
def _kasai(symbols, sa, rank):
    n = symbols.shape[0]
    lcp = np.zeros(n, dtype=np.int64)
    h = 0
    for i in range(n):
        r = rank[i]
        if r == 0:
            h = 0
            continue
        j = sa[r - 1]
        while i + h < n and j + h < n and symbols[i + h] == symbols[j + h]:
            h += 1
        lcp[r] = h
        if h > 0:
            h -= 1
    return lcp


@njit(cache=True, nogil=True)
def _fenwick_add(tree, index, delta):
    i = index + 1
    while i < tree.shape[0]:
        tree[i] += delta
        i += i & (-i)


@njit(cache=True, nogil=True)
def _fenwick_prefix(tree, count):
    # number of present ranks in [0, count)
    total = 0
    i = count
    while i > 0:
        total += tree[i]
        i -= i & (-i)
    return total


@njit(cache=True, nogil=True)
def _fenwick_select(tree, kth, top_bit):
    # rank of the kth (1-based) present element
    pos = 0
    step = top_bit
    while step > 0:
        nxt = pos + step
        if nxt < tree.shape[0] and tree[nxt] < kth:
            pos = nxt
            kth -= tree[nxt]
        step >>= 1
    return pos


@njit(cache=True, nogil=True)
def _build_min_tree(lcp):
    size = 1
    while size < lcp.shape[0]:
        size *= 2
    tree = np.full(2 * size, _NO_LIMIT, dtype=np.int64)
    tree[size:size + lcp.shape[0]] = lcp
    for i in range(size - 1, 0, -1):
        tree[i] = min(tree[2 * i], tree[2 * i + 1])
    return tree, size


@njit(cache=True, nogil=True)
def _range_min(tree, size, lo, hi):
    # min over [lo, hi] inclusive
    best = _NO_LIMIT
    lo += size
    hi += size + 1
    while lo < hi:
        if lo & 1:
            best = min(best, tree[lo])
            lo += 1
        if hi & 1:
            hi -= 1
            best = min(best, tree[hi])
        lo >>= 1
        hi >>= 1
    return best


@njit(cache=True, nogil=True)
def _window_match_lengths(rank, lcp, positions, starts, caps):
    n = rank.shape[0]
    fenwick = np.zeros(n + 1, dtype=np.int64)
    top_bit = 1
    while top_bit * 2 <= n:
        top_bit *= 2
    min_tree, size = _build_min_tree(lcp)
    out = np.empty(positions.shape[0], dtype=np.int64)
    lo = 0
    hi = 0
    members = 0
    for q in range(positions.shape[0]):
        i = positions[q]
        start = starts[q]
        while hi < i:
            _fenwick_add(fenwick, rank[hi], 1)
            hi += 1
            members += 1
        while lo < start:
            _fenwick_add(fenwick, rank[lo], -1)
            lo += 1
            members -= 1
        r = rank[i]
        best = 0
        below = _fenwick_prefix(fenwick, r)
        if below > 0:
            pred = _fenwick_select(fenwick, below, top_bit)
            best = max(best, _range_min(min_tree, size, pred + 1, r))
        if below < members:
            succ = _fenwick_select(fenwick, below + 1, top_bit)
            best = max(best, _range_min(min_tree, size, r + 1, succ))
        if best > caps[q]:
            best = caps[q]
        out[q] = best + 1
    return out


@dataclass(frozen=True)
class SuffixIndex:
    """Suffix array, rank and LCP arrays of one sequence; build once, query many windows."""

    symbols: np.ndarray
    suffix_array: np.ndarray
    rank: np.ndarray
    lcp: np.ndarray

    @classmethod
    def build(cls, symbols: np.ndarray) -> "SuffixIndex":
        symbols = np.ascontiguousarray(symbols)
        sa, rank = build_suffix_array(symbols)
        lcp = _kasai(symbols, sa, rank) if symbols.size else np.empty(0, dtype=np.int64)
        logger.debug("Suffix index over %d symbols", symbols.size)
        return cls(symbols=symbols, suffix_array=sa, rank=rank, lcp=lcp)

    @property
    def size(self) -> int:
        return int(self.symbols.size)

    def window_match_lengths(self, positions: np.ndarray, starts: np.ndarray, caps: np.ndarray) -> np.ndarray:
        """
        1 + longest match of the suffix at each position against suffixes in [start, position).

        ``positions`` must be increasing and ``starts`` non-decreasing; the
        match is capped at ``caps`` and naturally at the end of the data.
        """
        return _window_match_lengths(
            self.rank,
            self.lcp,
            np.ascontiguousarray(positions, dtype=np.int64),
            np.ascontiguousarray(starts, dtype=np.int64),
            np.ascontiguousarray(caps, dtype=np.int64),
        )
