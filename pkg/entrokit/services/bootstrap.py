"""
Stationary-bootstrap standard errors for the fixed-window LZ estimators.

A replica of the k match lengths is built from blocks that start at a
uniform position, run for a Geometric(p) number of steps (mean 1/p), wrap
around the end of the profile and are cut at total length k.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from ..config import get_settings
from ..exceptions import DomainError
from ..models.estimators import BootstrapConfig, BootstrapKind
from ..models.processes import RngSeed
from ..utils.concurrency import map_ordered
from ..utils.rng import child_generators
from .lz_estimators import h_hat_nk, h_tilde_nk
from .matchlen import MatchLengthProfile, WindowKind

logger = logging.getLogger(__name__)

REPLICAS_PER_CHUNK = 50
MIN_AUTOCORRELATION_LENGTH = 30


@dataclass(frozen=True)
class BootstrapResult:
    estimate: float
    stderr: float
    block_param: float
    replicas: np.ndarray


def resample_indices(k: int, p: float, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Indices of one stationary-bootstrap replica and the lengths of its blocks."""
    if k < 1:
        raise DomainError("cannot resample an empty profile")
    if not 0 < p <= 1:
        raise DomainError(f"block parameter must lie in (0, 1], got {p}")
    fresh = rng.random(k) < p
    fresh[0] = True
    block_first = np.flatnonzero(fresh)
    lengths = np.diff(np.append(block_first, k))
    origins = rng.integers(0, k, size=block_first.size)
    offsets = np.arange(k) - np.repeat(block_first, lengths)
    return (np.repeat(origins, lengths) + offsets) % k, lengths


def _statistic(values: np.ndarray, log_n: float, kind: BootstrapKind) -> float:
    if kind == BootstrapKind.HHAT:
        return log_n * values.size / float(values.sum())
    return log_n * float(np.mean(1.0 / values))


def autocorrelation(values: np.ndarray, max_lag: int) -> np.ndarray:
    """Sample autocorrelation at lags 0..max_lag (biased estimator, FFT based)."""
    x = np.asarray(values, dtype=np.float64)
    x = x - x.mean()
    k = x.size
    spectrum = np.fft.rfft(x, n=2 * k)
    acov = np.fft.irfft(spectrum * np.conj(spectrum), n=2 * k)[: max_lag + 1] / k
    if acov[0] <= 0:
        return np.concatenate([[1.0], np.zeros(max_lag)])
    return acov / acov[0]


def choose_block_param(
    profile: Union[MatchLengthProfile, np.ndarray],
    noise_band: Optional[float] = None,
) -> float:
    """
    Block parameter p = 1/h* from the autocorrelogram of the match lengths.

    h* is the first lag whose |autocorrelation| falls inside the noise band
    c/sqrt(k) (c = 2 unless overridden).
    """
    values = np.asarray(getattr(profile, "values", profile), dtype=np.float64)
    k = values.size
    if k < MIN_AUTOCORRELATION_LENGTH:
        raise DomainError(f"need at least {MIN_AUTOCORRELATION_LENGTH} match lengths, got {k}")
    band = (noise_band or get_settings().block_noise_band) / math.sqrt(k)
    rho = autocorrelation(values, k - 1)
    inside = np.flatnonzero(np.abs(rho[1:]) < band)
    cutoff = int(inside[0]) + 1 if inside.size else k - 1
    logger.debug("Autocorrelogram cutoff lag %d (band %.4g)", cutoff, band)
    return 1.0 / cutoff


def stationary_bootstrap_stderr(
    profile: MatchLengthProfile,
    kind: BootstrapKind,
    config: Optional[BootstrapConfig] = None,
) -> BootstrapResult:
    """
    Bootstrap standard error of hhat-nk or htilde-nk.

    Args:
        profile: FIXED-window match lengths (k >= 2).
        kind: Which estimator to resample.
        config: Replica count, block parameter (None = autocorrelogram choice)
            and seed.

    Returns:
        BootstrapResult with the point estimate, sigma-hat (1/(B-1)
        normalization), the block parameter used and the replica values.
    """
    config = config or BootstrapConfig(replicas=get_settings().bootstrap_replicas)
    if profile.kind != WindowKind.FIXED:
        raise DomainError("the bootstrap applies to fixed-window profiles only")
    if profile.k < 2:
        raise DomainError("bootstrap needs at least two match lengths")
    p = config.p if config.p is not None else choose_block_param(profile, config.noise_band)
    values = profile.values.astype(np.float64)
    log_n = math.log2(profile.window)
    chunks = [
        (start, min(REPLICAS_PER_CHUNK, config.replicas - start))
        for start in range(0, config.replicas, REPLICAS_PER_CHUNK)
    ]
    generators = child_generators(RngSeed(seed=config.seed, stream_id=config.stream_id), len(chunks))

    def run_chunk(task: int) -> list[float]:
        rng = generators[task]
        out = []
        for _ in range(chunks[task][1]):
            indices, _ = resample_indices(profile.k, p, rng)
            out.append(_statistic(values[indices], log_n, kind))
        return out

    replicas = np.asarray([v for chunk in map_ordered(run_chunk, range(len(chunks))) for v in chunk])
    estimate = h_hat_nk(profile) if kind == BootstrapKind.HHAT else h_tilde_nk(profile)
    # shifted by the first replica so identical replicas give exactly 0
    stderr = float((replicas - replicas[0]).std(ddof=1))
    logger.info("Bootstrap %s: B=%d p=%.4g stderr=%.6g", kind.value, config.replicas, p, stderr)
    return BootstrapResult(estimate=estimate, stderr=stderr, block_param=p, replicas=replicas)
