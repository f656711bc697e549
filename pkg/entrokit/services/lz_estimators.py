"""
Lempel-Ziv match-length entropy estimators.

Fixed window (k matches against the preceding n symbols):
    hhat-nk   = [ (1/k) sum L / log2 n ]^-1
    htilde-nk = (1/k) sum log2 n / L
Increasing window (positions i = 2..n against the whole past):
    hhat-n    = [ (1/n) sum L_i / log2 i ]^-1
    htilde-n  = (1/n) sum log2 i / L_i
The increasing-window sums have n - 1 terms under a 1/n prefactor.
"""

import math
from fractions import Fraction
from typing import Optional

import numpy as np

from ..exceptions import DomainError
from ..models.estimators import LzEstimateConfig, LzKind
from ..models.sequences import EntropyValue, SymbolSequence
from .matchlen import MatchLengthProfile, WindowKind, fixed_window_profile, increasing_window_profile
from .suffix_index import SuffixIndex


def _fixed_profile(profile: MatchLengthProfile, n: Optional[int], k: Optional[int]) -> tuple[int, int]:
    if profile.kind != WindowKind.FIXED:
        raise DomainError("fixed-window estimators need a FIXED profile")
    window = profile.window if n is None else n
    if window != profile.window:
        raise DomainError(f"profile was computed with window {profile.window}, not {window}")
    if k is not None and k != profile.k:
        raise DomainError(f"profile holds {profile.k} match lengths, not {k}")
    if window < 2:
        raise DomainError("window length must be at least 2")
    if profile.k < 1:
        raise DomainError("at least one match length is required")
    return window, profile.k


def _mean_length(values: np.ndarray) -> Fraction:
    return Fraction(int(values.sum()), int(values.size))


def _mean_inverse_length(values: np.ndarray) -> Fraction:
    lengths, counts = np.unique(values, return_counts=True)
    total = sum(Fraction(int(c), int(l)) for l, c in zip(lengths, counts))
    return total / int(values.size)


def h_hat_nk(profile: MatchLengthProfile, n: Optional[int] = None, k: Optional[int] = None) -> EntropyValue:
    """Sliding-window estimator: log2 n over the mean match length."""
    window, _ = _fixed_profile(profile, n, k)
    # exact rationals keep hhat <= htilde bitwise
    return math.log2(window) * float(1 / _mean_length(profile.values))


def h_tilde_nk(profile: MatchLengthProfile, n: Optional[int] = None, k: Optional[int] = None) -> EntropyValue:
    window, _ = _fixed_profile(profile, n, k)
    return math.log2(window) * float(_mean_inverse_length(profile.values))


def _increasing_terms(profile: MatchLengthProfile) -> tuple[np.ndarray, np.ndarray, int]:
    if profile.kind != WindowKind.INCREASING:
        raise DomainError("increasing-window estimators need an INCREASING profile")
    n = profile.n
    if n < 2 or profile.k < 1:
        raise DomainError("increasing-window estimators need n >= 2")
    if profile.positions.min() < 2:
        raise DomainError("increasing-window sums start at position 2")
    return np.log2(profile.positions.astype(np.float64)), profile.values.astype(np.float64), n


def h_hat_n(profile: MatchLengthProfile) -> EntropyValue:
    logs, lengths, n = _increasing_terms(profile)
    return n / math.fsum(lengths / logs)


def h_tilde_n(profile: MatchLengthProfile) -> EntropyValue:
    logs, lengths, n = _increasing_terms(profile)
    return math.fsum(logs / lengths) / n


def lz_estimate(
    x: SymbolSequence,
    config: LzEstimateConfig,
    index: Optional[SuffixIndex] = None,
) -> EntropyValue:
    """Compute the match lengths ``config`` needs on ``x`` and apply the estimator."""
    if config.kind.fixed_window:
        profile = fixed_window_profile(x, config.n, config.k, index=index)
        return h_hat_nk(profile) if config.kind == LzKind.HHAT_NK else h_tilde_nk(profile)
    profile = increasing_window_profile(x, config.n, index=index)
    return h_hat_n(profile) if config.kind == LzKind.HHAT_N else h_tilde_n(profile)


def suggest_params(total: int, c: float = 1.0) -> tuple[int, int]:
    """
    Rule-of-thumb split of a data budget into window n and match count k.

    Returns the largest n with n + c (log2 n)^2 <= total and
    k = round(c (log2 n)^2), at least 1.
    """
    if total < 100:
        raise DomainError(f"need at least 100 symbols, got {total}")
    if c <= 0:
        raise DomainError("multiplier must be positive")

    def used(n: int) -> float:
        return n + c * math.log2(n) ** 2

    lo, hi = 2, total
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if used(mid) <= total:
            lo = mid
        else:
            hi = mid - 1
    n = lo
    k = max(1, round(c * math.log2(n) ** 2))
    while n + k > total and n > 2:
        n -= 1
    return n, k


def tradeoff_split(total: int, ratio: float) -> tuple[int, int]:
    """(n, k) with n + k = round(total - 2 log2 total) and n / k close to ``ratio``."""
    if ratio <= 0:
        raise DomainError("ratio must be positive")
    budget = int(round(total - 2 * math.log2(total)))
    k = max(1, int(round(budget / (ratio + 1))))
    return budget - k, k
