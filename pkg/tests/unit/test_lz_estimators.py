"""
Unit tests for the match-length entropy estimators and the (n, k) helpers.
"""

import math

import numpy as np
import pytest

from entrokit.exceptions import DomainError
from entrokit.models.estimators import LzEstimateConfig, LzKind
from entrokit.models.sequences import SymbolSequence
from entrokit.services.lz_estimators import (
    h_hat_n,
    h_hat_nk,
    h_tilde_n,
    h_tilde_nk,
    lz_estimate,
    suggest_params,
    tradeoff_split,
)
from entrokit.services.matchlen import (
    MatchLengthProfile,
    WindowKind,
    fixed_window_profile,
    increasing_window_profile,
)
from tests.oracles import random_string


# ===========================================================================
# Helpers
# ===========================================================================


def _make_zeros(length: int) -> SymbolSequence:
    return SymbolSequence(np.zeros(length, dtype=np.int64))


def _make_fixed_profile(values, n: int) -> MatchLengthProfile:
    values = np.asarray(values)
    return MatchLengthProfile(values, WindowKind.FIXED, np.arange(n, n + values.size), window=n)


# ===========================================================================
# TestFixedWindowEstimators
# ===========================================================================


class TestFixedWindowEstimators:
    """hhat-nk and htilde-nk."""

    def test_lengths_equal_to_log_n(self):
        """L = log2 n everywhere gives exactly one bit."""
        profile = _make_fixed_profile([4, 4, 4], 16)
        assert h_hat_nk(profile) == 1.0
        assert h_tilde_nk(profile) == 1.0

    def test_all_zeros_single_match(self):
        """n = 4, k = 1 on constant data: L = 5, both estimators give 0.4."""
        profile = fixed_window_profile(_make_zeros(8), 4, 1)
        assert profile.values.tolist() == [5]
        assert h_hat_nk(profile) == pytest.approx(0.4)
        assert h_tilde_nk(profile) == pytest.approx(0.4)

    def test_single_match_estimators_agree(self):
        """k = 1 makes the two estimators identical."""
        x = random_string(np.random.default_rng(3), 300)
        for start in range(0, 40):
            profile = fixed_window_profile(x, 64, 1, start=64 + start)
            assert h_hat_nk(profile) == h_tilde_nk(profile)

    def test_jensen_inequality(self):
        """htilde-nk >= hhat-nk on random profiles, with no tolerance."""
        rng = np.random.default_rng(19)
        for _ in range(2000):
            n = int(rng.integers(2, 10_000))
            values = rng.integers(1, n + 2, size=int(rng.integers(1, 50)))
            profile = _make_fixed_profile(values, n)
            assert h_tilde_nk(profile) >= h_hat_nk(profile)

    def test_jensen_on_data(self):
        """The inequality holds on profiles computed from data."""
        rng = np.random.default_rng(20)
        for _ in range(50):
            x = random_string(rng, 600, int(rng.choice([2, 3])))
            profile = fixed_window_profile(x, 256, 300)
            assert h_tilde_nk(profile) >= h_hat_nk(profile)

    def test_rejects_increasing_profile(self):
        """An INCREASING profile is not accepted."""
        profile = increasing_window_profile(random_string(np.random.default_rng(0), 100))
        with pytest.raises(DomainError):
            h_hat_nk(profile)

    def test_explicit_parameters_must_match(self):
        """n or k that disagree with the profile are rejected."""
        profile = _make_fixed_profile([3, 4], 8)
        with pytest.raises(DomainError):
            h_hat_nk(profile, n=16)
        with pytest.raises(DomainError):
            h_tilde_nk(profile, k=3)

    def test_window_too_small(self):
        """n < 2 is a domain error."""
        with pytest.raises(DomainError):
            h_hat_nk(_make_fixed_profile([1, 2], 1))


# ===========================================================================
# TestIncreasingWindowEstimators
# ===========================================================================


class TestIncreasingWindowEstimators:
    """hhat-n and htilde-n."""

    def test_all_zeros_n_2(self):
        """Single term L_2 = 3 on 0000: hhat-n = 2/3, htilde-n = 1/6."""
        profile = increasing_window_profile(_make_zeros(4), 2)
        assert profile.values.tolist() == [3]
        assert h_hat_n(profile) == pytest.approx(2 / 3)
        assert h_tilde_n(profile) == pytest.approx(1 / 6)

    def test_jensen_renormalized(self):
        """With the n-1 terms weighted equally, htilde-n >= hhat-n within 1e-12 relative."""
        rng = np.random.default_rng(23)
        for _ in range(200):
            x = random_string(rng, int(rng.integers(20, 400)))
            profile = increasing_window_profile(x)
            terms = profile.k
            n = profile.n
            hat = h_hat_n(profile) * terms / n
            tilde = h_tilde_n(profile) * n / terms
            assert tilde >= hat * (1 - 1e-12)

    def test_rejects_fixed_profile(self):
        """A FIXED profile is not accepted."""
        with pytest.raises(DomainError):
            h_tilde_n(_make_fixed_profile([3], 4))

    def test_sum_starts_at_two(self):
        """A profile containing position 1 is rejected."""
        profile = MatchLengthProfile(np.array([1, 2]), WindowKind.INCREASING, np.array([1, 2]))
        with pytest.raises(DomainError):
            h_hat_n(profile)


# ===========================================================================
# TestLzEstimate
# ===========================================================================


class TestLzEstimate:
    """Config-driven dispatch."""

    def test_fixed_config(self):
        """hhat-nk through a config equals the profile path."""
        x = random_string(np.random.default_rng(1), 2000)
        config = LzEstimateConfig(kind=LzKind.HHAT_NK, n=1024, k=500)
        assert lz_estimate(x, config) == h_hat_nk(fixed_window_profile(x, 1024, 500))

    def test_increasing_config(self):
        """htilde-n through a config equals the profile path."""
        x = random_string(np.random.default_rng(1), 2000)
        config = LzEstimateConfig(kind=LzKind.HTILDE_N, n=900)
        assert lz_estimate(x, config) == h_tilde_n(increasing_window_profile(x, 900))

    def test_fixed_config_needs_k(self):
        """A fixed-window config without k fails validation."""
        with pytest.raises(ValueError):
            LzEstimateConfig(kind=LzKind.HTILDE_NK, n=16)

    def test_fair_coin_close_to_one_bit(self):
        """htilde-nk on fair coin flips lands near 1 bit."""
        x = random_string(np.random.default_rng(31), 1 << 17)
        estimate = lz_estimate(x, LzEstimateConfig(kind=LzKind.HTILDE_NK, n=1 << 16, k=1 << 15))
        assert estimate == pytest.approx(1.0, abs=0.15)


# ===========================================================================
# TestParameterHelpers
# ===========================================================================


class TestParameterHelpers:
    """suggest_params and tradeoff_split."""

    def test_suggest_params_million(self):
        """N = 10^6, c = 1 gives n near 999600 and k near 398."""
        n, k = suggest_params(1_000_000)
        assert n + k <= 1_000_000
        assert n == pytest.approx(999_600, abs=5)
        assert k == pytest.approx(398, abs=2)

    def test_suggest_params_small_budget(self):
        """N = 100 stays feasible with k >= 1."""
        n, k = suggest_params(100)
        assert n + k <= 100
        assert k >= 1
        assert n >= 2

    def test_suggest_params_monotone_in_c(self):
        """A larger multiplier never shrinks k."""
        ks = [suggest_params(100_000, c)[1] for c in (0.5, 1.0, 2.0, 4.0)]
        assert ks == sorted(ks)

    def test_suggest_params_domain(self):
        """N < 100 and c <= 0 are rejected."""
        with pytest.raises(DomainError):
            suggest_params(99)
        with pytest.raises(DomainError):
            suggest_params(1000, 0)

    def test_tradeoff_split(self):
        """n + k equals N minus twice log2 N, split by the requested ratio."""
        total = 1_000_000
        budget = round(total - 2 * math.log2(total))
        for ratio in (0.5, 1.0, 2.0, 5.0):
            n, k = tradeoff_split(total, ratio)
            assert n + k == budget
            assert n / k == pytest.approx(ratio, rel=1e-4)

    def test_tradeoff_split_ratio_positive(self):
        """A non-positive ratio is rejected."""
        with pytest.raises(DomainError):
            tradeoff_split(1000, 0)
