from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field, model_validator


class EstimatorMethod(str, Enum):
    """Estimators available to the CLI and the experiment harness."""

    PLUGIN = "plugin"
    HHAT_NK = "hhat-nk"
    HTILDE_NK = "htilde-nk"
    HHAT_N = "hhat-n"
    HTILDE_N = "htilde-n"
    CTW = "ctw"
    RENEWAL = "renewal"


class LzKind(str, Enum):
    HHAT_NK = "hhat-nk"
    HTILDE_NK = "htilde-nk"
    HHAT_N = "hhat-n"
    HTILDE_N = "htilde-n"

    @property
    def fixed_window(self) -> bool:
        return self in (LzKind.HHAT_NK, LzKind.HTILDE_NK)


class BootstrapKind(str, Enum):
    HHAT = "hhat"
    HTILDE = "htilde"


FIXED_WINDOW_METHODS = (EstimatorMethod.HHAT_NK, EstimatorMethod.HTILDE_NK)
INCREASING_WINDOW_METHODS = (EstimatorMethod.HHAT_N, EstimatorMethod.HTILDE_N)


class LzEstimateConfig(BaseModel):
    kind: LzKind
    n: int = Field(ge=2)
    k: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _require_k(self) -> "LzEstimateConfig":
        if self.kind.fixed_window and self.k is None:
            raise ValueError(f"{self.kind.value} needs a match count k")
        return self


class EstimatorConfig(BaseModel):
    """One estimator in a battery.

    ``n`` is optional for the increasing-window methods (half the data length is
    used); ``depth`` None means infinite-depth CTW.
    """

    method: EstimatorMethod
    n: Optional[int] = Field(default=None, ge=2)
    k: Optional[int] = Field(default=None, ge=1)
    w: Optional[int] = Field(default=None, ge=1)
    depth: Optional[int] = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _require_parameters(self) -> "EstimatorConfig":
        if self.method == EstimatorMethod.PLUGIN and self.w is None:
            raise ValueError("plugin needs a word length w")
        if self.method in FIXED_WINDOW_METHODS and (self.n is None or self.k is None):
            raise ValueError(f"{self.method.value} needs window n and match count k")
        return self

    @property
    def label(self) -> str:
        if self.method == EstimatorMethod.PLUGIN:
            return f"plugin(w={self.w})"
        if self.method in FIXED_WINDOW_METHODS:
            return f"{self.method.value}(n={self.n},k={self.k})"
        if self.method in INCREASING_WINDOW_METHODS:
            return self.method.value if self.n is None else f"{self.method.value}(n={self.n})"
        if self.method == EstimatorMethod.CTW:
            return "ctw(D=inf)" if self.depth is None else f"ctw(D={self.depth})"
        return self.method.value

    def required_length(self) -> int:
        """Smallest data length this configuration can run on."""
        if self.method in FIXED_WINDOW_METHODS:
            return self.n + self.k
        if self.method in INCREASING_WINDOW_METHODS and self.n is not None:
            return self.n + 1
        if self.method == EstimatorMethod.PLUGIN:
            return self.w
        return 1


class BootstrapConfig(BaseModel):
    """Stationary-bootstrap settings; ``p`` None picks it from the autocorrelogram."""

    replicas: int = Field(default=1000, ge=2)
    p: Optional[float] = Field(default=None, gt=0, le=1)
    seed: int = Field(default=0, ge=0, lt=2**64)
    stream_id: int = Field(default=0, ge=0)
    noise_band: Optional[float] = Field(default=None, gt=0)
