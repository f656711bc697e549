"""
Unit tests for the stationary bootstrap and the autocorrelogram block choice.
"""

import math

import numpy as np
import pytest
from scipy import stats

from entrokit.config import get_settings
from entrokit.exceptions import DomainError
from entrokit.models.estimators import BootstrapConfig, BootstrapKind
from entrokit.services.bootstrap import (
    autocorrelation,
    choose_block_param,
    resample_indices,
    stationary_bootstrap_stderr,
)
from entrokit.services.lz_estimators import h_hat_nk, h_tilde_nk
from entrokit.services.matchlen import MatchLengthProfile, WindowKind, fixed_window_profile, increasing_window_profile
from tests.oracles import random_string


# ===========================================================================
# Helpers
# ===========================================================================


def _make_profile(values, n: int = 1024) -> MatchLengthProfile:
    values = np.asarray(values, dtype=np.int64)
    return MatchLengthProfile(values, WindowKind.FIXED, np.arange(n, n + values.size), window=n)


def _make_moving_average(order: int, k: int, seed: int = 0) -> np.ndarray:
    """Equal-weight moving average over order + 1 iid normals: correlated up to lag ``order``."""
    noise = np.random.default_rng(seed).standard_normal(k + order)
    return np.convolve(noise, np.ones(order + 1), mode="valid")


# ===========================================================================
# TestResampleIndices
# ===========================================================================


class TestResampleIndices:
    """Circular geometric blocks."""

    def test_replica_has_length_k(self):
        """Block lengths add up to k and every index is inside the profile."""
        rng = np.random.default_rng(1)
        indices, lengths = resample_indices(97, 0.1, rng)
        assert indices.size == 97
        assert lengths.sum() == 97
        assert indices.min() >= 0 and indices.max() < 97

    def test_blocks_are_circular_runs(self):
        """Inside a block consecutive indices step by one modulo k."""
        rng = np.random.default_rng(2)
        indices, lengths = resample_indices(50, 0.05, rng)
        start = 0
        for length in lengths:
            block = indices[start:start + length]
            assert np.all(np.diff(block) % 50 == 1)
            start += length

    def test_p_one_gives_unit_blocks(self):
        """p = 1 is the ordinary bootstrap."""
        _, lengths = resample_indices(200, 1.0, np.random.default_rng(3))
        assert lengths.tolist() == [1] * 200

    def test_block_lengths_are_geometric(self):
        """Untruncated block lengths pass a chi-square test against Geometric(p)."""
        p = 0.2
        rng = np.random.default_rng(4)
        observed = []
        for _ in range(200):
            _, lengths = resample_indices(1000, p, rng)
            observed.extend(lengths[:-1].tolist())
        observed = np.minimum(np.asarray(observed), 10)
        counts = np.bincount(observed, minlength=11)[1:]
        probs = np.array([p * (1 - p) ** (j - 1) for j in range(1, 10)] + [(1 - p) ** 9])
        _, p_value = stats.chisquare(counts, probs * counts.sum())
        assert p_value > 1e-4

    def test_block_starts_are_uniform(self):
        """Block origins pass a chi-square test against the uniform law on 0..k-1."""
        k = 20
        rng = np.random.default_rng(5)
        origins = []
        for _ in range(500):
            indices, lengths = resample_indices(k, 0.3, rng)
            firsts = np.concatenate([[0], np.cumsum(lengths)[:-1]])
            origins.extend(indices[firsts].tolist())
        counts = np.bincount(origins, minlength=k)
        _, p_value = stats.chisquare(counts)
        assert p_value > 1e-4

    def test_invalid_parameters(self):
        """p outside (0, 1] and k < 1 are rejected."""
        rng = np.random.default_rng(0)
        with pytest.raises(DomainError):
            resample_indices(10, 0.0, rng)
        with pytest.raises(DomainError):
            resample_indices(10, 1.5, rng)
        with pytest.raises(DomainError):
            resample_indices(0, 0.5, rng)


# ===========================================================================
# TestBlockParameter
# ===========================================================================


class TestBlockParameter:
    """Autocorrelogram cutoff."""

    def test_autocorrelation_lag_zero(self):
        """rho(0) = 1; a constant series has no correlation at positive lags."""
        rho = autocorrelation(np.random.default_rng(0).standard_normal(100), 5)
        assert rho[0] == pytest.approx(1.0)
        assert autocorrelation(np.ones(50), 3).tolist() == [1.0, 0.0, 0.0, 0.0]

    def test_autocorrelation_matches_direct_sum(self):
        """The FFT route equals the direct biased estimator."""
        x = np.random.default_rng(1).standard_normal(64)
        c = x - x.mean()
        direct = [np.dot(c[: 64 - h], c[h:]) / np.dot(c, c) for h in range(6)]
        assert autocorrelation(x, 5) == pytest.approx(direct, abs=1e-12)

    def test_moving_average_cutoff(self):
        """MA(4) cuts off at lag 5 and MA(9) at lag 10 with an absolute band of 0.05."""
        k = 50_000
        band = 0.05 * math.sqrt(k)
        assert choose_block_param(_make_moving_average(4, k), band) == pytest.approx(0.2)
        assert choose_block_param(_make_moving_average(9, k, seed=1), band) == pytest.approx(0.1)

    def test_iid_values_use_short_blocks(self):
        """Independent values give p >= 1/2."""
        values = np.random.default_rng(6).standard_normal(10_000)
        assert choose_block_param(values, 4.0) >= 0.5

    def test_default_band_from_settings(self, monkeypatch):
        """Without an explicit band the settings multiplier is used."""
        values = _make_moving_average(4, 50_000)
        monkeypatch.setenv("ENTROKIT_BLOCK_NOISE_BAND", str(0.05 * math.sqrt(values.size)))
        get_settings.cache_clear()
        assert choose_block_param(values) == pytest.approx(0.2)

    def test_needs_30_values(self):
        """Fewer than 30 match lengths are rejected."""
        with pytest.raises(DomainError):
            choose_block_param(np.arange(29.0))


# ===========================================================================
# TestStationaryBootstrap
# ===========================================================================


class TestStationaryBootstrap:
    """stationary_bootstrap_stderr end to end."""

    def test_constant_profile_has_zero_stderr(self):
        """Identical match lengths give identical replicas."""
        result = stationary_bootstrap_stderr(
            _make_profile([7] * 60), BootstrapKind.HHAT, BootstrapConfig(replicas=100, p=0.5)
        )
        assert result.stderr == 0.0
        assert result.estimate == pytest.approx(10 / 7)

    def test_constant_profile_has_zero_stderr_htilde(self):
        """The same holds for htilde-nk, whose replicas average 1/L."""
        result = stationary_bootstrap_stderr(
            _make_profile([7] * 60, n=100), BootstrapKind.HTILDE, BootstrapConfig(replicas=100, p=0.5)
        )
        assert np.unique(result.replicas).size == 1
        assert result.stderr == 0.0

    def test_replica_count_and_estimate(self):
        """B replicas are returned; the point estimate is the estimator on the original profile."""
        profile = _make_profile(np.random.default_rng(7).integers(5, 15, size=200))
        result = stationary_bootstrap_stderr(profile, BootstrapKind.HTILDE, BootstrapConfig(replicas=120, p=0.25))
        assert result.replicas.size == 120
        assert result.estimate == h_tilde_nk(profile)
        assert result.block_param == 0.25
        assert result.stderr == pytest.approx(result.replicas.std(ddof=1))

    def test_iid_lengths_match_delta_method(self):
        """With p = 1 on independent lengths sigma-hat is close to the delta-method value."""
        rng = np.random.default_rng(8)
        values = rng.integers(6, 20, size=2000)
        profile = _make_profile(values)
        result = stationary_bootstrap_stderr(profile, BootstrapKind.HHAT, BootstrapConfig(replicas=1000, p=1.0))
        mean = values.mean()
        delta = h_hat_nk(profile) * values.std() / (mean * math.sqrt(values.size))
        assert result.stderr == pytest.approx(delta, rel=0.15)

    def test_replicas_look_gaussian(self):
        """B = 1000 replicas on independent lengths have skewness below 0.5 in magnitude."""
        profile = _make_profile(np.random.default_rng(11).integers(6, 20, size=2000))
        result = stationary_bootstrap_stderr(profile, BootstrapKind.HTILDE, BootstrapConfig(replicas=1000, p=0.5))
        assert abs(stats.skew(result.replicas)) < 0.5

    def test_rotation_invariance(self):
        """Rotating L circularly moves sigma-hat by no more than 3 Monte Carlo standard errors."""
        x = random_string(np.random.default_rng(12), 2 * 1024 + 2000)
        profile = fixed_window_profile(x, 1024, 2000)
        rotated = _make_profile(np.roll(profile.values, 700))
        config = BootstrapConfig(replicas=2000, p=0.1, seed=3)
        original = stationary_bootstrap_stderr(profile, BootstrapKind.HTILDE, config).stderr
        turned = stationary_bootstrap_stderr(rotated, BootstrapKind.HTILDE, config).stderr
        # each sigma-hat has relative standard error 1 / sqrt(2 (B - 1))
        assert abs(original - turned) <= 3 * original / math.sqrt(config.replicas - 1)

    def test_deterministic_across_thread_counts(self, monkeypatch):
        """Replicas depend only on the seed, not on the pool size."""
        profile = _make_profile(np.random.default_rng(9).integers(5, 15, size=300))
        config = BootstrapConfig(replicas=230, p=0.2, seed=5)
        monkeypatch.setenv("ENTROKIT_THREADS", "1")
        get_settings.cache_clear()
        single = stationary_bootstrap_stderr(profile, BootstrapKind.HHAT, config)
        monkeypatch.setenv("ENTROKIT_THREADS", "4")
        get_settings.cache_clear()
        pooled = stationary_bootstrap_stderr(profile, BootstrapKind.HHAT, config)
        assert np.array_equal(single.replicas, pooled.replicas)

    def test_automatic_block_param(self):
        """p None picks the block parameter from the profile."""
        profile = _make_profile(np.random.default_rng(10).integers(5, 15, size=500))
        result = stationary_bootstrap_stderr(
            profile, BootstrapKind.HHAT, BootstrapConfig(replicas=50, noise_band=4.0)
        )
        assert result.block_param == choose_block_param(profile, 4.0)

    def test_requires_fixed_profile(self):
        """Increasing-window profiles are rejected."""
        profile = increasing_window_profile(random_string(np.random.default_rng(0), 200))
        with pytest.raises(DomainError):
            stationary_bootstrap_stderr(profile, BootstrapKind.HHAT, BootstrapConfig(replicas=10, p=0.5))

    def test_requires_two_lengths(self):
        """k < 2 is rejected."""
        with pytest.raises(DomainError):
            stationary_bootstrap_stderr(_make_profile([4]), BootstrapKind.HTILDE, BootstrapConfig(replicas=10, p=0.5))
