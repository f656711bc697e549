"""
Experiment runner: R seeded realizations of a process, a battery of
estimators on each, and bias / stderr / rmse aggregated against the truth.

Repetition r draws stream r of the plan seed; HMM truths draw streams from
TRUTH_STREAM_BASE upwards so they never reuse a data realization. Results are
folded in repetition order, so the thread count never changes the output.
"""

import asyncio
import hashlib
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np
from scipy import stats

from ..config import get_settings
from ..exceptions import ConfigError, DomainError, EntrokitError
from ..models.estimators import (
    FIXED_WINDOW_METHODS,
    INCREASING_WINDOW_METHODS,
    EstimatorConfig,
    EstimatorMethod,
)
from ..models.experiments import BiasCurveRow, CurveAxis, EstimateReport, ExperimentPlan, LinearFit
from ..models.processes import HmmSpec, ProcessSpec, RngSeed, dump_process_spec
from .estimator_service import EstimatorService
from .generators import generate, true_entropy_rate
from .hmm_oracle import hmm_entropy_estimate
from .lz_estimators import tradeoff_split

logger = logging.getLogger(__name__)

TRUTH_STREAM_BASE = 1 << 32
TRUTH_SCHEMA = "entrokit-truth/1"

# (estimate, failure message) per estimator, in plan order
RepetitionOutcome = list[tuple[Optional[float], Optional[str]]]


def canonical_hash(payload: Any) -> str:
    """SHA-256 of ``payload`` serialized as canonical JSON (sorted keys, no whitespace)."""
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def plan_hash(plan: ExperimentPlan) -> str:
    return canonical_hash(plan.model_dump(mode="json"))


# ---------------------------------------------------------------------------
# Truth
# ---------------------------------------------------------------------------


class TruthCache:
    """HMM truths keyed by hash, held in memory and optionally as JSON files."""

    def __init__(self, directory: Optional[str] = None):
        self.directory = Path(directory) if directory else None
        self._memory: dict[str, float] = {}

    def _path(self, key: str) -> Optional[Path]:
        return self.directory / f"truth-{key}.json" if self.directory else None

    def get(self, key: str) -> Optional[float]:
        if key in self._memory:
            return self._memory[key]
        path = self._path(key)
        if path is None or not path.exists():
            return None
        try:
            document = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            logger.warning(f"Ignoring unreadable truth cache entry {path}: {e}")
            return None
        if document.get("schema") != TRUTH_SCHEMA:
            return None
        self._memory[key] = float(document["truth"])
        return self._memory[key]

    def put(self, key: str, value: float, stderr: Optional[float] = None):
        self._memory[key] = value
        path = self._path(key)
        if path is None:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(
            json.dumps({"schema": TRUTH_SCHEMA, "truth": value, "stderr": stderr}, sort_keys=True),
            encoding="utf-8",
        )


@lru_cache
def get_truth_cache() -> TruthCache:
    return TruthCache(get_settings().cache_dir)


def truth_key(spec: ProcessSpec, length: int, repetitions: int, seed: int) -> str:
    return canonical_hash({
        "spec": dump_process_spec(spec),
        "length": length,
        "repetitions": repetitions,
        "seed": seed,
    })


def resolve_truth(plan: ExperimentPlan, cache: Optional[TruthCache] = None) -> Optional[float]:
    """
    Truth of ``plan``: the given number, the closed-form rate, or the HMM oracle.

    HMM truths average ``truth_repetitions`` (default: settings.hmm_truth_reps)
    realizations of length ``truth_length`` (default: data_length) and are
    cached by the hash of those inputs.
    """
    if not isinstance(plan.truth, str):
        return float(plan.truth)
    exact = true_entropy_rate(plan.spec)
    if exact is not None:
        return exact
    if not isinstance(plan.spec, HmmSpec):
        return None

    cache = cache or get_truth_cache()
    length = plan.truth_length or plan.data_length
    repetitions = plan.truth_repetitions or get_settings().hmm_truth_reps
    key = truth_key(plan.spec, length, repetitions, plan.seed)
    cached = cache.get(key)
    if cached is not None:
        logger.info("Using cached HMM truth %s", key[:12])
        return cached
    result = hmm_entropy_estimate(plan.spec, length, repetitions, plan.seed, first_stream=TRUTH_STREAM_BASE)
    cache.put(key, result.estimate, result.stderr)
    return result.estimate


# ---------------------------------------------------------------------------
# Repetitions and aggregation
# ---------------------------------------------------------------------------


def run_repetition(plan: ExperimentPlan, repetition: int) -> RepetitionOutcome:
    """Generate realization ``repetition`` and apply every estimator; failures are recorded, not raised."""
    x = generate(plan.spec, plan.data_length, RngSeed(seed=plan.seed, stream_id=repetition))
    service = EstimatorService(x)
    outcome: RepetitionOutcome = []
    for config in plan.estimators:
        try:
            outcome.append((float(service.estimate(config)), None))
        except EntrokitError as e:
            logger.warning("Repetition %d, %s failed: %s", repetition, config.label, e.detail)
            outcome.append((None, f"rep {repetition}: {e.detail}"))
    return outcome


def _percent(value: Optional[float], truth: Optional[float]) -> Optional[float]:
    if value is None or truth is None or truth <= 0:
        return None
    return 100.0 * value / truth


def summarize(
    model: str,
    config: EstimatorConfig,
    estimates: Sequence[Optional[float]],
    failures: Sequence[str],
    truth: Optional[float],
    data_length: int,
) -> EstimateReport:
    """
    Aggregate one estimator over all repetitions.

    stderr is the sample standard deviation (ddof = 1, unavailable for a
    single value) and rmse the root mean squared error against ``truth``, so
    rmse^2 = bias^2 + stderr^2 (R - 1) / R.
    """
    values = np.asarray([v for v in estimates if v is not None], dtype=np.float64)
    n = config.n
    if n is None and config.method in INCREASING_WINDOW_METHODS:
        n = data_length // 2

    mean = float(values.mean()) if values.size else None
    stderr = float(values.std(ddof=1)) if values.size > 1 else None
    bias = rmse = None
    if mean is not None and truth is not None:
        bias = mean - truth
        rmse = math.sqrt(float(np.mean((values - truth) ** 2)))

    return EstimateReport(
        model=model,
        estimator=config.label,
        method=config.method,
        n=n,
        k=config.k,
        w=config.w,
        depth=config.depth,
        estimates=list(estimates),
        failures=list(failures),
        truth=truth,
        mean=mean,
        bias=bias,
        stderr=stderr,
        rmse=rmse,
        bias_pct=_percent(bias, truth),
        stderr_pct=_percent(stderr, truth),
        rmse_pct=_percent(rmse, truth),
    )


def aggregate(plan: ExperimentPlan, truth: Optional[float], outcomes: Sequence[RepetitionOutcome]) -> list[EstimateReport]:
    reports = []
    for position, config in enumerate(plan.estimators):
        estimates = [outcome[position][0] for outcome in outcomes]
        failures = [outcome[position][1] for outcome in outcomes if outcome[position][1] is not None]
        reports.append(summarize(plan.model, config, estimates, failures, truth, plan.data_length))
    return reports


async def run_experiment(plan: ExperimentPlan, threads: Optional[int] = None) -> list[EstimateReport]:
    """
    Run ``plan`` with repetitions fanned out over a thread pool.

    Args:
        plan: Validated experiment plan.
        threads: Worker count (default: settings.threads).

    Returns:
        One EstimateReport per estimator, in plan order.
    """
    workers = threads or get_settings().threads
    loop = asyncio.get_running_loop()
    logger.info(
        "Experiment %s: %d repetitions of %d symbols, %d estimators, %d threads",
        plan.model, plan.repetitions, plan.data_length, len(plan.estimators), workers,
    )
    with ThreadPoolExecutor(max_workers=workers) as pool:
        truth = await loop.run_in_executor(pool, resolve_truth, plan)
        outcomes = await asyncio.gather(*[
            loop.run_in_executor(pool, run_repetition, plan, repetition)
            for repetition in range(plan.repetitions)
        ])
    return aggregate(plan, truth, outcomes)


def run_experiment_sync(plan: ExperimentPlan, threads: Optional[int] = None) -> list[EstimateReport]:
    return asyncio.run(run_experiment(plan, threads))


# ---------------------------------------------------------------------------
# Curves, sweeps and fits
# ---------------------------------------------------------------------------


_AXIS_METHODS = {
    CurveAxis.INV_LOG_N: FIXED_WINDOW_METHODS + INCREASING_WINDOW_METHODS,
    CurveAxis.INV_SQRT_K: FIXED_WINDOW_METHODS,
    CurveAxis.INV_SQRT_N: INCREASING_WINDOW_METHODS,
}


def axis_value(axis: CurveAxis, grid_value: int) -> float:
    if axis == CurveAxis.INV_LOG_N:
        return 1.0 / math.log2(grid_value)
    return 1.0 / math.sqrt(grid_value)


def _curve_config(config: EstimatorConfig, axis: CurveAxis, grid_value: int) -> tuple[EstimatorConfig, int]:
    # returns the config at this grid point and the data it needs, lookahead included
    if axis == CurveAxis.INV_SQRT_K:
        updated = config.model_copy(update={"k": grid_value})
    else:
        updated = config.model_copy(update={"n": grid_value})
    if updated.method in FIXED_WINDOW_METHODS:
        return updated, 2 * updated.n + updated.k
    return updated, 2 * updated.n


def bias_curve(plan: ExperimentPlan, axis: CurveAxis, grid: Sequence[int], threads: Optional[int] = None) -> list[BiasCurveRow]:
    """
    Rerun ``plan`` at each grid value of n (or k) and tabulate bias and stderr.

    Only the window estimators the axis applies to are kept; the data length
    at each grid point is just enough for all of them without truncated matches.
    """
    configs = [c for c in plan.estimators if c.method in _AXIS_METHODS[axis]]
    if not configs:
        raise ConfigError(f"no estimator in the plan varies along {axis.value}")
    if not grid:
        raise ConfigError("bias curve needs at least one grid value")
    if min(grid) < 2:
        raise DomainError("grid values must be at least 2")

    rows: list[BiasCurveRow] = []
    for grid_value in grid:
        placed = [_curve_config(config, axis, grid_value) for config in configs]
        data_length = max(100, max(needed for _, needed in placed))
        point = plan.model_copy(update={
            "estimators": [config for config, _ in placed],
            "data_length": data_length,
        })
        point = ExperimentPlan.model_validate(point.model_dump())
        logger.info("Bias curve %s = %d over %d symbols", axis.value, grid_value, data_length)
        # rows carry the plan label so one estimator keeps one name along the curve
        for config, report in zip(configs, run_experiment_sync(point, threads)):
            rows.append(BiasCurveRow(
                axis=axis,
                grid_value=grid_value,
                axis_value=axis_value(axis, grid_value),
                estimator=config.label,
                bias=report.bias,
                stderr=report.stderr,
                rmse=report.rmse,
            ))
    return rows


def tradeoff_plan(
    total: int,
    ratios: Sequence[float],
    spec: ProcessSpec,
    repetitions: int = 20,
    seed: int = 0,
    model: str = "tradeoff",
) -> ExperimentPlan:
    """The n/k sweep at a fixed data budget as one plan (hhat-nk and htilde-nk per ratio)."""
    estimators = []
    for ratio in ratios:
        n, k = tradeoff_split(total, ratio)
        estimators.append(EstimatorConfig(method=EstimatorMethod.HHAT_NK, n=n, k=k))
        estimators.append(EstimatorConfig(method=EstimatorMethod.HTILDE_NK, n=n, k=k))
    return ExperimentPlan(
        model=model,
        spec=spec,
        estimators=estimators,
        repetitions=repetitions,
        data_length=total,
        seed=seed,
    )


def linear_fit(xs: Sequence[float], ys: Sequence[float]) -> LinearFit:
    """Least-squares line through (xs, ys) with its coefficient of determination."""
    if len(xs) != len(ys):
        raise DomainError("fit needs paired values")
    if len(xs) < 2 or len(set(xs)) < 2:
        raise DomainError("fit needs at least two distinct abscissae")
    result = stats.linregress(xs, ys)
    return LinearFit(slope=float(result.slope), intercept=float(result.intercept), r_squared=float(result.rvalue ** 2))
