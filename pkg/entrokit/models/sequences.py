"""
Numeric containers shared by every estimator.

Sequences and distributions wrap numpy arrays, so they are frozen dataclasses
with read-only buffers rather than pydantic models.
"""

from dataclasses import dataclass
from typing import Sequence, TypeAlias, Union

import numpy as np

from ..exceptions import DomainError

# bits per symbol
EntropyValue: TypeAlias = float

NORMALIZATION_TOL = 1e-9


@dataclass(frozen=True)
class SymbolSequence:
    """Finite-alphabet sequence; symbols are stored as a read-only uint8 array."""

    symbols: np.ndarray
    alphabet_size: int = 2

    def __post_init__(self):
        if self.alphabet_size < 2 or self.alphabet_size > 256:
            raise DomainError(f"alphabet size must be in [2, 256], got {self.alphabet_size}")
        arr = np.ascontiguousarray(self.symbols)
        if arr.ndim != 1:
            raise DomainError("symbols must be a one-dimensional array")
        if arr.size and (arr.min() < 0 or arr.max() >= self.alphabet_size):
            raise DomainError(f"symbols must lie in [0, {self.alphabet_size})")
        arr = arr.astype(np.uint8, copy=True)
        arr.setflags(write=False)
        object.__setattr__(self, "symbols", arr)

    @classmethod
    def from_iterable(cls, values: Union[str, Sequence[int]], alphabet_size: int = 2) -> "SymbolSequence":
        if isinstance(values, str):
            values = [int(ch) for ch in values if not ch.isspace()]
        return cls(np.asarray(values, dtype=np.int64), alphabet_size)

    @property
    def length(self) -> int:
        return int(self.symbols.size)

    def __len__(self) -> int:
        return self.length

    def require_binary(self) -> np.ndarray:
        if self.alphabet_size != 2:
            raise DomainError(f"binary sequence required, alphabet size is {self.alphabet_size}")
        return self.symbols

    def to_string(self) -> str:
        return (self.symbols + ord("0")).tobytes().decode("ascii")


@dataclass(frozen=True)
class DiscreteDistribution:
    """Probability vector indexed by support position."""

    probabilities: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=np.float64).copy()
        if p.ndim != 1 or p.size == 0:
            raise DomainError("probabilities must be a non-empty vector")
        if np.any(p < 0) or not np.all(np.isfinite(p)):
            raise DomainError("probabilities must be finite and non-negative")
        if abs(p.sum() - 1.0) > NORMALIZATION_TOL:
            raise DomainError(f"probabilities sum to {p.sum():.12g}, expected 1")
        p.setflags(write=False)
        object.__setattr__(self, "probabilities", p)

    @classmethod
    def from_counts(cls, counts: Union[np.ndarray, Sequence[float]]) -> "DiscreteDistribution":
        c = np.asarray(counts, dtype=np.float64)
        total = c.sum()
        if total <= 0:
            raise DomainError("counts must have a positive total")
        return cls(c / total)

    @property
    def size(self) -> int:
        return int(self.probabilities.size)

    def mean_of_support(self, offset: int = 1) -> float:
        """Mean when entry j is the value j + offset (ISI distributions start at 1)."""
        support = np.arange(self.size, dtype=np.float64) + offset
        return float(np.dot(support, self.probabilities))
