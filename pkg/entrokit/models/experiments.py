from enum import Enum
from typing import Literal, Optional, Union

from pydantic import BaseModel, Field, model_validator

from .estimators import EstimatorConfig, EstimatorMethod
from .processes import ProcessSpec


class CurveAxis(str, Enum):
    INV_LOG_N = "inv-log-n"
    INV_SQRT_K = "inv-sqrt-k"
    INV_SQRT_N = "inv-sqrt-n"


class ExperimentPlan(BaseModel):
    """R repetitions of one process, each fed to a battery of estimators."""

    model: str = "process"
    spec: ProcessSpec
    truth: Union[Literal["auto"], float] = "auto"
    estimators: list[EstimatorConfig] = Field(min_length=1)
    repetitions: int = Field(default=50, ge=1)
    data_length: int = Field(ge=100)
    seed: int = Field(default=0, ge=0, lt=2**64)

    # HMM truth: realization length and count (defaults: data_length, settings)
    truth_length: Optional[int] = Field(default=None, ge=100)
    truth_repetitions: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _estimators_fit(self) -> "ExperimentPlan":
        if not isinstance(self.truth, str) and self.truth < 0:
            raise ValueError("truth must be non-negative")
        for config in self.estimators:
            if config.required_length() > self.data_length:
                raise ValueError(f"{config.label} needs at least {config.required_length()} symbols")
        return self


class EstimateReport(BaseModel):
    """Aggregated results of one estimator over all repetitions of a plan."""

    model: str
    estimator: str
    method: EstimatorMethod
    n: Optional[int] = None
    k: Optional[int] = None
    w: Optional[int] = None
    depth: Optional[int] = None

    estimates: list[Optional[float]] = Field(default_factory=list)
    failures: list[str] = Field(default_factory=list)

    truth: Optional[float] = None
    mean: Optional[float] = None
    bias: Optional[float] = None
    stderr: Optional[float] = None
    rmse: Optional[float] = None
    bias_pct: Optional[float] = None
    stderr_pct: Optional[float] = None
    rmse_pct: Optional[float] = None


class BiasCurveRow(BaseModel):
    axis: CurveAxis
    grid_value: int
    axis_value: float
    estimator: str
    bias: Optional[float] = None
    stderr: Optional[float] = None
    rmse: Optional[float] = None


class LinearFit(BaseModel):
    slope: float
    intercept: float
    r_squared: float
