"""
Unit tests for the exact HMM likelihood and the entropy-rate approximation.
"""

import math

import numpy as np
import pytest

from entrokit.exceptions import DomainError
from entrokit.models.processes import HmmSpec
from entrokit.models.sequences import SymbolSequence
from entrokit.services.entropy import binary_entropy
from entrokit.services.hmm_oracle import hmm_entropy_estimate, hmm_forward, hmm_log_prob
from tests.oracles import all_strings, hmm_bruteforce_prob, random_hmm


# ===========================================================================
# Helpers
# ===========================================================================


def _make_bernoulli_hmm(p: float) -> HmmSpec:
    return HmmSpec(transitions=[[1.0]], rates=[p])


# ===========================================================================
# TestHmmLogProb
# ===========================================================================


class TestHmmLogProb:
    """hmm_log_prob against closed forms and exhaustive path enumeration."""

    def test_single_state_is_iid(self):
        """One hidden state degenerates to Bernoulli(p)."""
        x = SymbolSequence.from_iterable("0010110")
        expected = 3 * math.log2(0.25) + 4 * math.log2(0.75)
        assert hmm_log_prob(_make_bernoulli_hmm(0.25), x) == pytest.approx(expected, rel=1e-12)

    def test_matches_bruteforce_on_random_hmms(self):
        """Random HMMs with up to 3 states agree with path enumeration within 1e-10 relative."""
        rng = np.random.default_rng(11)
        for _ in range(40):
            spec = random_hmm(rng, int(rng.integers(1, 4)))
            n = int(rng.integers(1, 7))
            x = SymbolSequence(rng.integers(0, 2, size=n))
            expected = math.log2(hmm_bruteforce_prob(spec, x))
            assert hmm_log_prob(spec, x) == pytest.approx(expected, rel=1e-10)

    def test_probability_completeness(self):
        """Probabilities of all 2^10 strings sum to 1 within 1e-9."""
        spec = random_hmm(np.random.default_rng(5), 3)
        total = math.fsum(2.0 ** hmm_log_prob(spec, x) for x in all_strings(10))
        assert total == pytest.approx(1.0, abs=1e-9)

    def test_impossible_string_is_negative_infinity(self):
        """Deterministic P and Q give -inf to any other string, 0 to the consistent one."""
        spec = HmmSpec(transitions=[[0.0, 1.0], [1.0, 0.0]], emissions=[[1.0, 0.0], [0.0, 1.0]])
        # the stationary law is uniform, so each alternating string has probability 1/2
        assert hmm_log_prob(spec, SymbolSequence.from_iterable("0101")) == pytest.approx(-1.0)
        assert hmm_log_prob(spec, SymbolSequence.from_iterable("0110")) == -math.inf

    def test_certain_string_has_log_prob_zero(self):
        """An HMM that always emits 1 gives the all-ones string probability 1."""
        spec = HmmSpec(transitions=[[0.5, 0.5], [0.5, 0.5]], rates=[1.0, 1.0])
        assert hmm_log_prob(spec, SymbolSequence.from_iterable("1111")) == 0.0

    def test_renormalization_frequency_invariance(self):
        """Renormalizing every step or every 16 steps gives the same value within 1e-12."""
        spec = random_hmm(np.random.default_rng(8), 3)
        x = SymbolSequence(np.random.default_rng(9).integers(0, 2, size=2000))
        every = hmm_log_prob(spec, x, renorm_every=1)
        sparse = hmm_log_prob(spec, x, renorm_every=16)
        assert sparse == pytest.approx(every, rel=1e-12)

    def test_forward_state_row_vector(self):
        """The final row vector is a probability vector."""
        spec = random_hmm(np.random.default_rng(2), 3)
        state = hmm_forward(spec, SymbolSequence(np.random.default_rng(3).integers(0, 2, size=300)))
        assert np.all(state.row_vector >= 0)
        assert state.row_vector.sum() == pytest.approx(1.0, abs=1e-12)
        assert state.log_prob == state.log_scale

    def test_long_sequence_does_not_underflow(self):
        """10^5 symbols give a finite log-probability."""
        spec = random_hmm(np.random.default_rng(4), 2)
        x = SymbolSequence(np.random.default_rng(1).integers(0, 2, size=100_000))
        assert math.isfinite(hmm_log_prob(spec, x))

    def test_non_binary_rejected(self):
        """Symbols >= 2 are a domain error."""
        with pytest.raises(DomainError):
            hmm_log_prob(_make_bernoulli_hmm(0.5), SymbolSequence.from_iterable("012", 3))


# ===========================================================================
# TestHmmEntropyEstimate
# ===========================================================================


class TestHmmEntropyEstimate:
    """Averaging -(1/n) log2 P over realizations."""

    def test_bernoulli_hmm(self, seed):
        """A one-state HMM estimates h(0.25) within a few O(1/sqrt(n))."""
        result = hmm_entropy_estimate(_make_bernoulli_hmm(0.25), 20_000, 4, seed)
        assert result.estimate == pytest.approx(binary_entropy(0.25), abs=0.01)
        assert len(result.per_repetition) == 4
        assert result.stderr is not None

    def test_identical_emission_rows(self, seed):
        """Emission rows that agree make the rate h(q) whatever P is."""
        spec = HmmSpec(transitions=[[0.7, 0.3], [0.4, 0.6]], rates=[0.1, 0.1])
        result = hmm_entropy_estimate(spec, 50_000, 3, seed)
        assert result.estimate == pytest.approx(binary_entropy(0.1), abs=0.01)

    def test_single_repetition_has_no_stderr(self, seed):
        """R = 1 leaves the standard error unavailable."""
        result = hmm_entropy_estimate(_make_bernoulli_hmm(0.3), 1000, 1, seed)
        assert result.stderr is None

    def test_deterministic_given_seed(self, seed):
        """Same seed, same per-repetition values."""
        spec = random_hmm(np.random.default_rng(6), 3)
        a = hmm_entropy_estimate(spec, 5000, 3, seed)
        b = hmm_entropy_estimate(spec, 5000, 3, seed)
        assert a.per_repetition == b.per_repetition

    def test_stream_offset_changes_realizations(self, seed):
        """A different first stream draws different realizations."""
        spec = random_hmm(np.random.default_rng(6), 3)
        a = hmm_entropy_estimate(spec, 5000, 2, seed)
        b = hmm_entropy_estimate(spec, 5000, 2, seed, first_stream=100)
        assert a.per_repetition != b.per_repetition

    def test_zero_repetitions_rejected(self, seed):
        """At least one realization is required."""
        with pytest.raises(DomainError):
            hmm_entropy_estimate(_make_bernoulli_hmm(0.3), 1000, 0, seed)
