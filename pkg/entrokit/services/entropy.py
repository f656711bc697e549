"""
Elementary entropy functions.

All logarithms are base 2 and 0 log 0 is taken as 0.
"""

import math

from scipy.optimize import brentq

from ..exceptions import DomainError
from ..models.sequences import DiscreteDistribution, EntropyValue
from ..utils.numerics import xlog2x_sum


def binary_entropy(p: float) -> EntropyValue:
    """Entropy of a Bernoulli(p) variable in bits."""
    if not 0.0 <= p <= 1.0 or math.isnan(p):
        raise DomainError(f"p must lie in [0, 1], got {p}")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def shannon_entropy(d: DiscreteDistribution) -> EntropyValue:
    if not isinstance(d, DiscreteDistribution):
        d = DiscreteDistribution(d)
    return max(xlog2x_sum(d.probabilities), 0.0)


def inverse_binary_entropy(h: float) -> float:
    """The p in [0, 1/2] whose binary entropy is ``h``."""
    if not 0.0 <= h <= 1.0:
        raise DomainError(f"binary entropy must lie in [0, 1], got {h}")
    if h == 0.0:
        return 0.0
    if h == 1.0:
        return 0.5
    return brentq(lambda p: binary_entropy(p) - h, 1e-300, 0.5, xtol=1e-15, rtol=1e-15)
