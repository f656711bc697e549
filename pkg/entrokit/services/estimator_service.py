"""
EstimatorService - applies estimator configurations to one realization.

The suffix index and every match-length profile are built lazily and shared,
so a battery such as {hhat-nk, htilde-nk} over the same (n, k) walks the data
once.
"""

import logging
from typing import Optional

from ..exceptions import DomainError
from ..models.estimators import (
    FIXED_WINDOW_METHODS,
    INCREASING_WINDOW_METHODS,
    EstimatorConfig,
    EstimatorMethod,
)
from ..models.sequences import EntropyValue, SymbolSequence
from .ctw import ctw_entropy_estimate
from .lz_estimators import h_hat_n, h_hat_nk, h_tilde_n, h_tilde_nk
from .matchlen import MatchLengthProfile, fixed_window_profile, increasing_window_profile
from .plugin_estimator import plugin_entropy
from .renewal_estimator import renewal_entropy
from .suffix_index import SuffixIndex

logger = logging.getLogger(__name__)


class EstimatorService:
    """Estimators over a single sequence with shared match-length state."""

    def __init__(self, x: SymbolSequence):
        self.x = x
        self._index: Optional[SuffixIndex] = None
        self._profiles: dict[tuple, MatchLengthProfile] = {}

    @property
    def index(self) -> SuffixIndex:
        if self._index is None:
            logger.debug("Building suffix index over %d symbols", self.x.length)
            self._index = SuffixIndex.build(self.x.symbols)
        return self._index

    def fixed_profile(self, n: int, k: int) -> MatchLengthProfile:
        key = ("fixed", n, k)
        if key not in self._profiles:
            self._profiles[key] = fixed_window_profile(self.x, n, k, index=self.index)
        return self._profiles[key]

    def increasing_profile(self, n: Optional[int] = None) -> MatchLengthProfile:
        n = self.x.length // 2 if n is None else n
        key = ("increasing", n)
        if key not in self._profiles:
            self._profiles[key] = increasing_window_profile(self.x, n, index=self.index)
        return self._profiles[key]

    def estimate(self, config: EstimatorConfig) -> EntropyValue:
        """
        Point estimate of ``config`` on the service's sequence.

        Raises:
            DomainError: the configuration does not fit the sequence.
            InsufficientEventsError: renewal estimator on data with < 2 ones.
        """
        if config.required_length() > self.x.length:
            raise DomainError(f"{config.label} needs {config.required_length()} symbols, got {self.x.length}")
        method = config.method
        if method == EstimatorMethod.PLUGIN:
            return plugin_entropy(self.x, config.w)
        if method in FIXED_WINDOW_METHODS:
            profile = self.fixed_profile(config.n, config.k)
            return h_hat_nk(profile) if method == EstimatorMethod.HHAT_NK else h_tilde_nk(profile)
        if method in INCREASING_WINDOW_METHODS:
            profile = self.increasing_profile(config.n)
            return h_hat_n(profile) if method == EstimatorMethod.HHAT_N else h_tilde_n(profile)
        if method == EstimatorMethod.CTW:
            return ctw_entropy_estimate(self.x, config.depth)
        return renewal_entropy(self.x)


def apply_estimator(x: SymbolSequence, config: EstimatorConfig) -> EntropyValue:
    return EstimatorService(x).estimate(config)
