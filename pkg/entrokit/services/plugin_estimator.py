"""
Plug-in (maximum-likelihood) entropy estimator over overlapping w-words.

Words are packed into int64 keys in base ``alphabet_size`` (first symbol most
significant), so only the observed support is ever stored.
"""

import logging
from dataclasses import dataclass

import numpy as np

from ..exceptions import CapacityError, DomainError
from ..models.sequences import DiscreteDistribution, EntropyValue, SymbolSequence
from .entropy import shannon_entropy

logger = logging.getLogger(__name__)

MAX_PACKED_KEY = 1 << 60


@dataclass(frozen=True)
class WordHistogram:
    """Sorted packed word keys with their counts over ``total_windows`` windows."""

    word_length: int
    alphabet_size: int
    keys: np.ndarray
    counts: np.ndarray

    @property
    def total_windows(self) -> int:
        return int(self.counts.sum())

    def distribution(self) -> DiscreteDistribution:
        return DiscreteDistribution.from_counts(self.counts)

    def merge(self, other: "WordHistogram") -> "WordHistogram":
        """Sum the counts of two histograms built over disjoint window sets."""
        if (other.word_length, other.alphabet_size) != (self.word_length, self.alphabet_size):
            raise DomainError("cannot merge histograms of different word spaces")
        keys, inverse = np.unique(np.concatenate([self.keys, other.keys]), return_inverse=True)
        counts = np.zeros(keys.size, dtype=np.int64)
        np.add.at(counts, inverse, np.concatenate([self.counts, other.counts]))
        return WordHistogram(self.word_length, self.alphabet_size, keys, counts)


def _check_capacity(alphabet_size: int, w: int):
    if alphabet_size ** w > MAX_PACKED_KEY:
        raise CapacityError(f"words of length {w} over {alphabet_size} symbols do not fit in a packed key")


def word_histogram(x: SymbolSequence, w: int) -> WordHistogram:
    """Histogram of the n - w + 1 overlapping words of length ``w``."""
    n = x.length
    if w < 1:
        raise DomainError(f"word length must be positive, got {w}")
    if w > n:
        raise DomainError(f"word length {w} exceeds sequence length {n}")
    _check_capacity(x.alphabet_size, w)
    windows = n - w + 1
    symbols = x.symbols.astype(np.int64)
    keys = np.zeros(windows, dtype=np.int64)
    for offset in range(w):
        keys *= x.alphabet_size
        keys += symbols[offset:offset + windows]
    unique, counts = np.unique(keys, return_counts=True)
    logger.debug("w=%d: %d distinct words in %d windows", w, unique.size, windows)
    return WordHistogram(w, x.alphabet_size, unique, counts.astype(np.int64))


def plugin_entropy(x: SymbolSequence, w: int) -> EntropyValue:
    """(1/w) times the entropy of the empirical w-word distribution."""
    return shannon_entropy(word_histogram(x, w).distribution()) / w
