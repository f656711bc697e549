"""
Match lengths L_i^n.

L at position i with window n is 1 + the longest l <= n such that the l
symbols starting at i also start at some j in [i - n, i - 1]; the match may
run past i - 1 and is additionally capped by the end of the data.

Indexing is 0-based on the data array. For the increasing window the array
index equals the position i (window x[0:i]). For the fixed window, match
number 1..k sits at array index ``start``..``start + k - 1`` with
``start >= n`` (by default ``start = n``).
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from ..exceptions import BoundsError, DomainError
from ..models.sequences import SymbolSequence
from .suffix_index import SuffixIndex

logger = logging.getLogger(__name__)


class WindowKind(str, Enum):
    FIXED = "fixed"
    INCREASING = "increasing"


@dataclass(frozen=True)
class MatchLengthProfile:
    """Match lengths at ``positions``; ``window`` is n for FIXED and None for INCREASING."""

    values: np.ndarray
    kind: WindowKind
    positions: np.ndarray
    window: Optional[int] = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.int64)
        positions = np.asarray(self.positions, dtype=np.int64)
        if values.shape != positions.shape:
            raise DomainError("one match length per position is required")
        if values.size and values.min() < 1:
            raise DomainError("match lengths are at least 1")
        if self.kind == WindowKind.FIXED:
            if self.window is None or self.window < 1:
                raise DomainError("a fixed-window profile needs its window length")
            if values.size and values.max() > self.window + 1:
                raise DomainError("fixed-window match length exceeds n + 1")
        elif values.size and np.any(values > positions + 1):
            raise DomainError("increasing-window match length exceeds i + 1")
        values.setflags(write=False)
        positions.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "positions", positions)

    @property
    def k(self) -> int:
        return int(self.values.size)

    @property
    def n(self) -> int:
        """Window length (FIXED) or last position covered (INCREASING)."""
        if self.kind == WindowKind.FIXED:
            return int(self.window)
        return int(self.positions.max()) if self.positions.size else 0


def match_length_at(x: SymbolSequence, i: int, n: int) -> int:
    """Exhaustive evaluation of the match-length definition at one position."""
    data = x.symbols
    size = data.size
    if n < 1:
        raise DomainError(f"window length must be positive, got {n}")
    if i - n < 0 or i >= size:
        raise BoundsError(f"window [{i - n}, {i - 1}] with position {i} not inside data of length {size}")
    limit = min(n, size - i)
    best = 0
    for j in range(i - n, i):
        length = 0
        while length < limit and data[j + length] == data[i + length]:
            length += 1
        if length > best:
            best = length
            if best == limit:
                break
    return best + 1


def matching_statistics(
    x: SymbolSequence,
    kind: WindowKind,
    positions: np.ndarray,
    n: Optional[int] = None,
    index: Optional[SuffixIndex] = None,
) -> MatchLengthProfile:
    """
    Match lengths at many positions through the suffix index.

    Args:
        x: Data sequence.
        kind: FIXED uses window [i - n, i - 1]; INCREASING uses [0, i - 1].
        positions: 0-based array indices, any order.
        n: Window length, required for FIXED.
        index: Prebuilt suffix index of ``x`` to share between calls.

    Returns:
        MatchLengthProfile identical to repeated ``match_length_at`` calls.

    Raises:
        BoundsError: a window that does not fit inside the data.
    """
    positions = np.asarray(positions, dtype=np.int64)
    size = x.length
    if positions.size and (positions.min() < 0 or positions.max() >= size):
        raise BoundsError(f"positions must lie in [0, {size})")
    if kind == WindowKind.FIXED:
        if n is None or n < 1:
            raise DomainError("fixed-window matching needs a positive window length")
        if positions.size and positions.min() - n < 0:
            raise BoundsError(f"window of length {n} does not fit before position {positions.min()}")
        starts = positions - n
        caps = np.full(positions.size, n, dtype=np.int64)
    else:
        if positions.size and positions.min() < 1:
            raise BoundsError("increasing-window positions start at 1")
        starts = np.zeros(positions.size, dtype=np.int64)
        caps = positions.copy()

    if index is None:
        index = SuffixIndex.build(x.symbols)
    order = np.argsort(positions, kind="stable")
    values = np.empty(positions.size, dtype=np.int64)
    if positions.size:
        values[order] = index.window_match_lengths(positions[order], starts[order], caps[order])
    return MatchLengthProfile(values, kind, positions, n if kind == WindowKind.FIXED else None)


def fixed_window_profile(
    x: SymbolSequence,
    n: int,
    k: int,
    start: Optional[int] = None,
    index: Optional[SuffixIndex] = None,
) -> MatchLengthProfile:
    """L_i^n for i = 1..k, i.e. array indices ``start``..``start + k - 1``."""
    start = n if start is None else start
    if k < 1:
        raise DomainError(f"match count must be positive, got {k}")
    if start < n or start + k > x.length:
        raise BoundsError(f"{k} matches from index {start} with window {n} need more than {x.length} symbols")
    positions = np.arange(start, start + k, dtype=np.int64)
    return matching_statistics(x, WindowKind.FIXED, positions, n=n, index=index)


def increasing_window_profile(
    x: SymbolSequence,
    n: Optional[int] = None,
    index: Optional[SuffixIndex] = None,
) -> MatchLengthProfile:
    """L_i^i for i = 2..n; ``n`` defaults to half the data length."""
    n = x.length // 2 if n is None else n
    if n < 2:
        raise DomainError(f"increasing window needs n >= 2, got {n}")
    if n >= x.length:
        raise BoundsError(f"position {n} is outside data of length {x.length}")
    positions = np.arange(2, n + 1, dtype=np.int64)
    return matching_statistics(x, WindowKind.INCREASING, positions, index=index)


def recurrence_time(x: SymbolSequence, m: int, start: int) -> Optional[int]:
    """
    Steps back until the m-block at ``start`` reappears.

    Returns the smallest k >= 1 with x[start - k : start - k + m] equal to
    x[start : start + m], or None when it does not recur inside the data.
    """
    data = x.symbols
    if m < 1 or start < 0 or start + m > data.size:
        raise BoundsError(f"block of length {m} at {start} is not inside data of length {data.size}")
    block = data[start:start + m]
    for k in range(1, start + 1):
        if np.array_equal(data[start - k:start - k + m], block):
            return k
    return None
