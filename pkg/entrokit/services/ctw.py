"""
Context-tree weighting over binary data.

Each context node keeps Krichevsky-Trofimov counts; internal nodes mix their
own KT probability with the product of their children's weighted
probabilities, half and half. Everything stays in the log2 domain. The past
before the first symbol is read as zeros.

Finite depth D runs the classic sequential update on an explicit tree.
Infinite depth sorts all (zero-padded, reversed) pasts with the suffix index
and walks the implied compressed context tree: a unary chain of m nodes whose
counts K match its lower end y collapses to K + 2^-m (y - K).
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numba import njit

from ..exceptions import CapacityError, DomainError
from ..models.sequences import EntropyValue, SymbolSequence
from ..models.suffix_sets import SuffixSet
from ..utils.numerics import LN2, log2_add, log2_half_mix, kt_log2
from .suffix_index import SuffixIndex

logger = logging.getLogger(__name__)

MAX_TREE_NODES = 50_000_000
_NO_LIMIT = 1 << 62


@dataclass(frozen=True)
class ContextTree:
    """
    Materialized depth-D context tree; node 0 is the root.

    ``children[v, s]`` is the child reached when the next older symbol is s
    (-1 when absent); ``counts[v]`` holds (#zeros, #ones) seen in context v.
    """

    max_depth: int
    counts: np.ndarray
    log_kt: np.ndarray
    log_weighted: np.ndarray
    children: np.ndarray
    node_depth: np.ndarray

    @property
    def size(self) -> int:
        return int(self.counts.shape[0])

    @property
    def root_log_prob(self) -> float:
        return float(self.log_weighted[0])

    def find(self, context: str) -> Optional[int]:
        """Node index for a context written in time order (most recent symbol last)."""
        node = 0
        for ch in reversed(context):
            node = int(self.children[node, int(ch)])
            if node < 0:
                return None
        return node


def kt_log_prob(a: int, b: int) -> float:
    """log2 Krichevsky-Trofimov probability of a binary block with a zeros and b ones."""
    if a < 0 or b < 0:
        raise DomainError("counts must be non-negative")
    if a == 0 and b == 0:
        return 0.0
    return float(kt_log2(a, b))


@njit(cache=True, nogil=True)
def _sequential_tree(x, depth, capacity):
    n = x.shape[0]
    children = np.full((capacity, 2), -1, dtype=np.int64)
    counts = np.zeros((capacity, 2), dtype=np.int64)
    log_kt = np.zeros(capacity)
    log_w = np.zeros(capacity)
    node_depth = np.zeros(capacity, dtype=np.int64)
    path = np.empty(depth + 1, dtype=np.int64)
    used = 1
    for t in range(n):
        node = 0
        path[0] = 0
        for d in range(1, depth + 1):
            bit = x[t - d] if t - d >= 0 else 0
            child = children[node, bit]
            if child < 0:
                child = used
                used += 1
                children[node, bit] = child
                node_depth[child] = d
            node = child
            path[d] = node
        s = x[t]
        for d in range(depth, -1, -1):
            v = path[d]
            total = counts[v, 0] + counts[v, 1]
            log_kt[v] += math.log((counts[v, s] + 0.5) / (total + 1.0)) / LN2
            counts[v, s] += 1
            if d == depth:
                log_w[v] = log_kt[v]
            else:
                below = 0.0
                if children[v, 0] >= 0:
                    below += log_w[children[v, 0]]
                if children[v, 1] >= 0:
                    below += log_w[children[v, 1]]
                log_w[v] = log2_half_mix(log_kt[v], below)
    return counts[:used], log_kt[:used], log_w[:used], children[:used], node_depth[:used]


def tree_capacity(length: int, depth: int) -> int:
    """Upper bound on the node count of a depth-``depth`` tree fed ``length`` symbols."""
    return min((1 << (depth + 1)) - 1, length * depth + 1)


def build_context_tree(x: SymbolSequence, depth: int) -> ContextTree:
    """Sequentially feed ``x`` through a depth-``depth`` context tree."""
    data = x.require_binary()
    if depth < 0:
        raise DomainError(f"depth must be non-negative, got {depth}")
    capacity = tree_capacity(data.size, depth)
    if capacity > MAX_TREE_NODES:
        raise CapacityError(f"depth {depth} over {data.size} symbols needs {capacity} nodes; use infinite depth")
    counts, log_kt, log_w, children, node_depth = _sequential_tree(data.astype(np.int64), depth, capacity)
    return ContextTree(depth, counts, log_kt, log_w, children, node_depth)


def ctw_log_prob(x: SymbolSequence, depth: int) -> float:
    """log2 of the depth-D weighted mixture probability of ``x``."""
    if x.length == 0:
        x.require_binary()
        return 0.0
    return build_context_tree(x, depth).root_log_prob


# ---------------------------------------------------------------------------
# Infinite depth
# ---------------------------------------------------------------------------


@njit(cache=True, nogil=True)
def _sorted_contexts(sa, lcp, lo, hi, cap):
    # suffixes starting in [lo, hi], in rank order, with capped adjacent LCPs
    starts = np.empty(hi - lo + 1, dtype=np.int64)
    adjacent = np.zeros(max(hi - lo, 0), dtype=np.int64)
    count = 0
    running = _NO_LIMIT
    for r in range(sa.shape[0]):
        if count > 0:
            running = min(running, lcp[r])
        if lo <= sa[r] <= hi:
            if count > 0:
                adjacent[count - 1] = min(running, cap)
            starts[count] = sa[r]
            count += 1
            running = _NO_LIMIT
    return starts, adjacent


@njit(cache=True)
def _chain(log_kt_value, log_bottom, length):
    # weighted probability at the top of a unary chain of `length` nodes
    if length <= 0:
        return log_bottom
    shrink = 2.0 ** (-length)
    return log2_add(log_kt_value + math.log1p(-shrink) / LN2, log_bottom - length)


@njit(cache=True, nogil=True)
def _compressed_weighting(symbols, adjacent, depth):
    m = symbols.shape[0]
    st_depth = np.empty(m + 1, dtype=np.int64)
    st_a = np.zeros(m + 1, dtype=np.int64)
    st_b = np.zeros(m + 1, dtype=np.int64)
    st_log = np.zeros(m + 1)
    top = 0
    st_depth[0] = 0
    for q in range(m):
        c_depth = depth
        c_a = 1 if symbols[q] == 0 else 0
        c_b = 1 - c_a
        c_log = -1.0
        h = adjacent[q] if q < m - 1 else 0
        while True:
            parent = st_depth[top]
            if parent > h:
                # attach the pending child, then close this node
                if parent < depth:
                    st_log[top] += _chain(kt_log2(c_a, c_b), c_log, c_depth - parent - 1)
                st_a[top] += c_a
                st_b[top] += c_b
                c_depth = parent
                c_a = st_a[top]
                c_b = st_b[top]
                own = kt_log2(c_a, c_b)
                c_log = own if parent == depth else log2_half_mix(own, st_log[top])
                top -= 1
                continue
            if parent < h:
                top += 1
                st_depth[top] = h
                st_a[top] = 0
                st_b[top] = 0
                st_log[top] = 0.0
                parent = h
            if parent < depth:
                st_log[top] += _chain(kt_log2(c_a, c_b), c_log, c_depth - parent - 1)
            st_a[top] += c_a
            st_b[top] += c_b
            break
    own = kt_log2(st_a[0], st_b[0])
    return own if depth == 0 else log2_half_mix(own, st_log[0])


def compressed_ctw_log_prob(x: SymbolSequence, depth: Optional[int] = None) -> float:
    """Weighted probability via the compressed context tree; ``depth`` None means unbounded."""
    data = x.require_binary()
    n = data.size
    if n == 0:
        return 0.0
    if depth is not None and depth < 0:
        raise DomainError(f"depth must be non-negative, got {depth}")
    cap = n if depth is None else min(depth, n)
    # past of time t, read backwards and zero padded, is the suffix of this array at n - t
    padded = np.concatenate([data[::-1], np.zeros(n, dtype=np.uint8)])
    index = SuffixIndex.build(padded)
    starts, adjacent = _sorted_contexts(index.suffix_array, index.lcp, 1, n, cap)
    symbols = data[n - starts].astype(np.int64)
    logger.debug("Compressed CTW over %d symbols", n)
    return float(_compressed_weighting(symbols, adjacent, cap))


def ctw_log_prob_infinite(x: SymbolSequence) -> float:
    return compressed_ctw_log_prob(x, None)


def ctw_entropy_estimate(x: SymbolSequence, depth: Optional[int] = None) -> EntropyValue:
    """-(1/n) log2 of the weighted probability; ``depth`` None is the infinite-depth tree."""
    if x.length == 0:
        raise DomainError("cannot estimate entropy of an empty sequence")
    if depth is None or tree_capacity(x.length, depth) > MAX_TREE_NODES:
        log_prob = compressed_ctw_log_prob(x, depth)
    else:
        log_prob = ctw_log_prob(x, depth)
    return -log_prob / x.length


# ---------------------------------------------------------------------------
# Explicit Bayesian mixture and redundancy
# ---------------------------------------------------------------------------


def suffix_counts(x: SymbolSequence, suffixes: SuffixSet) -> np.ndarray:
    """(#zeros, #ones) following each context of ``suffixes`` in ``x`` (zero-padded past)."""
    data = x.require_binary()
    depth = suffixes.depth
    counts = np.zeros((suffixes.size, 2), dtype=np.int64)
    padded = [0] * depth + data.tolist()
    for t in range(data.size):
        past = padded[t:t + depth]
        counts[suffixes.context_index(past), data[t]] += 1
    return counts


def mixture_log_prob(x: SymbolSequence, depth: int) -> float:
    """log2 of the sum over every suffix set S of depth <= D of prior(S) * prod KT(a_s, b_s)."""
    total = -math.inf
    for suffixes in SuffixSet.enumerate_all(depth):
        counts = suffix_counts(x, suffixes)
        term = suffixes.prior_log2(depth) + sum(kt_log_prob(int(a), int(b)) for a, b in counts)
        total = log2_add(total, term)
    return float(total)


def ctw_redundancy_bound(tree_size: int, n: int) -> float:
    """Per-symbol redundancy bound (|S|/2n) log2 n + (3|S| + 1)/n."""
    return tree_size / (2 * n) * math.log2(n) + (3 * tree_size + 1) / n
