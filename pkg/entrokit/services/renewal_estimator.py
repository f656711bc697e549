"""
Renewal entropy estimator.

Inter-arrival times (ISIs) are the gaps between consecutive ones; the rate
uses the full data length, and the estimate is rate * H(empirical ISI law).
"""

from dataclasses import dataclass

import numpy as np

from ..exceptions import InsufficientEventsError
from ..models.sequences import DiscreteDistribution, EntropyValue, SymbolSequence
from .entropy import shannon_entropy


@dataclass(frozen=True)
class IsiSequence:
    intervals: np.ndarray
    rate: float

    @property
    def count(self) -> int:
        return int(self.intervals.size)

    def distribution(self) -> DiscreteDistribution:
        """Empirical law over j = 1..max interval (entry j - 1 is P(Y = j))."""
        counts = np.bincount(self.intervals)[1:]
        return DiscreteDistribution.from_counts(counts)


def extract_isis(x: SymbolSequence) -> IsiSequence:
    data = x.require_binary()
    ones = np.flatnonzero(data)
    if ones.size < 2:
        raise InsufficientEventsError(f"need at least two ones, found {ones.size}")
    return IsiSequence(intervals=np.diff(ones).astype(np.int64), rate=ones.size / data.size)


def renewal_entropy(x: SymbolSequence) -> EntropyValue:
    isis = extract_isis(x)
    return isis.rate * shannon_entropy(isis.distribution())
