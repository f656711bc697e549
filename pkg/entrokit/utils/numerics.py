"""Log-domain helpers (base 2 throughout)."""

import math

import numpy as np
from numba import njit

LN2 = math.log(2.0)
NEG_INF = float("-inf")


@njit(cache=True)
def log2_add(u: float, v: float) -> float:
    """log2(2**u + 2**v) without leaving the log domain."""
    if u == -np.inf:
        return v
    if v == -np.inf:
        return u
    if u < v:
        u, v = v, u
    return u + math.log1p(2.0 ** (v - u)) / LN2


@njit(cache=True)
def log2_half_mix(u: float, v: float) -> float:
    """log2(2**u / 2 + 2**v / 2)."""
    return log2_add(u, v) - 1.0


@njit(cache=True)
def kt_log2(a: int, b: int) -> float:
    """Closed-form log2 of the Krichevsky-Trofimov block probability."""
    return (
        math.lgamma(a + 0.5) + math.lgamma(b + 0.5) - math.lgamma(a + b + 1.0) - math.log(math.pi)
    ) / LN2


def xlog2x_sum(probabilities: np.ndarray) -> float:
    """-sum p log2 p with 0 log 0 = 0."""
    p = np.asarray(probabilities, dtype=np.float64)
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p)))
