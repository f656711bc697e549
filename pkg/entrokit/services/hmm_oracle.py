"""
Exact HMM likelihoods and the entropy-rate approximation built on them.

The probability of a binary string is b M(2) ... M(n) 1 with
b_y = pi(y) Q[y, x1] and M(k)[y, y'] = P[y, y'] Q[y', x_k]. The forward row
vector is renormalized periodically and the log2 normalizers accumulated, so
long strings never underflow.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numba import njit

from ..exceptions import DomainError
from ..models.processes import HmmSpec, RngSeed
from ..models.sequences import EntropyValue, SymbolSequence
from ..utils.concurrency import map_ordered
from ..utils.numerics import LN2
from .generators import generate, stationary_distribution

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HmmForwardState:
    """Forward pass result: log2 of the accumulated normalizers and the normalized row vector."""

    log_scale: float
    row_vector: np.ndarray

    @property
    def log_prob(self) -> float:
        return self.log_scale


@dataclass(frozen=True)
class HmmEntropyEstimate:
    estimate: EntropyValue
    stderr: Optional[float]
    per_repetition: list[float]


@njit(cache=True, nogil=True)
def _forward(pi, transitions, emissions, x, renorm_every):
    states = pi.shape[0]
    alpha = np.empty(states)
    for y in range(states):
        alpha[y] = pi[y] * emissions[y, x[0]]
    nxt = np.empty(states)
    log_scale = 0.0
    for t in range(1, x.shape[0]):
        if t % renorm_every == 0:
            total = alpha.sum()
            if total <= 0.0:
                return -np.inf, alpha
            alpha /= total
            log_scale += math.log(total) / LN2
        symbol = x[t]
        for j in range(states):
            acc = 0.0
            for i in range(states):
                acc += alpha[i] * transitions[i, j]
            nxt[j] = acc * emissions[j, symbol]
        alpha[:] = nxt
    total = alpha.sum()
    if total <= 0.0:
        return -np.inf, alpha
    return log_scale + math.log(total) / LN2, alpha / total


def hmm_forward(spec: HmmSpec, x: SymbolSequence, renorm_every: int = 1) -> HmmForwardState:
    """
    Run the scaled forward recursion over ``x``.

    Args:
        spec: HMM with known transition and emission tables.
        x: Binary observations.
        renorm_every: Renormalize every this many steps (1 = every step).

    Returns:
        HmmForwardState whose ``log_scale`` is log2 P(x); an impossible string
        yields ``-inf``.

    Raises:
        DomainError: non-binary input or empty sequence.
    """
    if x.symbols.size and x.symbols.max() >= 2:
        raise DomainError("HMM observations must be binary")
    if x.length == 0:
        raise DomainError("cannot evaluate an empty sequence")
    if renorm_every < 1:
        raise DomainError("renorm_every must be at least 1")
    transitions = spec.transition_array()
    pi = stationary_distribution(transitions, require_aperiodic=False)
    log_scale, row = _forward(pi, transitions, spec.emission_array(), x.symbols.astype(np.int64), renorm_every)
    return HmmForwardState(log_scale=float(log_scale), row_vector=row)


def hmm_log_prob(spec: HmmSpec, x: SymbolSequence, renorm_every: int = 1) -> float:
    """log2 probability of ``x``; ``-inf`` when the string is impossible."""
    return hmm_forward(spec, x, renorm_every).log_scale


def hmm_entropy_estimate(
    spec: HmmSpec, n: int, repetitions: int, seed: int, first_stream: int = 0
) -> HmmEntropyEstimate:
    """
    Average of -(1/n) log2 P(X_1..X_n) over independent realizations.

    Realization r uses stream ``first_stream + r`` of ``seed``; the standard error is the sample
    standard deviation over sqrt(R), unavailable when R = 1.
    """
    if repetitions < 1:
        raise DomainError("at least one repetition is required")

    def one(stream: int) -> float:
        x = generate(spec, n, RngSeed(seed=seed, stream_id=first_stream + stream))
        return -hmm_log_prob(spec, x) / n

    values = map_ordered(one, range(repetitions))
    logger.info("HMM entropy over %d realizations of length %d", repetitions, n)
    arr = np.asarray(values)
    stderr = float(arr.std(ddof=1) / math.sqrt(repetitions)) if repetitions > 1 else None
    return HmmEntropyEstimate(estimate=float(arr.mean()), stderr=stderr, per_repetition=[float(v) for v in values])
