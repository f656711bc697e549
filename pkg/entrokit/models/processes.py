"""
Process specifications.

A ``ProcessSpec`` is a JSON document tagged by ``kind``; see scripts/README.md
for the schema and examples.
"""

from typing import Annotated, Any, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, Field, TypeAdapter, model_validator

from .suffix_sets import SuffixSet

STOCHASTIC_TOL = 1e-9
SEED_LIMIT = 2**64
MAX_MARKOV_STATES = 4096


class RngSeed(BaseModel):
    """Seed plus stream id; one stream per repetition."""

    seed: int = Field(ge=0, lt=SEED_LIMIT)
    stream_id: int = Field(default=0, ge=0)


def _check_rows(rows: list[list[float]], width: int, name: str):
    for idx, row in enumerate(rows):
        if len(row) != width:
            raise ValueError(f"{name} row {idx} has {len(row)} entries, expected {width}")
        if any(v < 0 for v in row):
            raise ValueError(f"{name} row {idx} has negative entries")
        if abs(sum(row) - 1.0) > STOCHASTIC_TOL:
            raise ValueError(f"{name} row {idx} sums to {sum(row):.12g}")


class IidSpec(BaseModel):
    kind: Literal["iid"] = "iid"
    p: float = Field(ge=0, le=1)


class MarkovSpec(BaseModel):
    """Order-l chain; row s of ``transitions`` is the law of x[t] given the packed past s.

    The past x[t-l..t-1] is packed oldest-first in base ``alphabet_size``.
    """

    kind: Literal["markov"] = "markov"
    order: int = Field(ge=1, le=16)
    alphabet_size: int = Field(default=2, ge=2, le=10)
    transitions: list[list[float]]
    initial: Union[Literal["stationary"], list[float]] = "stationary"

    @model_validator(mode="after")
    def _validate_tables(self) -> "MarkovSpec":
        states = self.alphabet_size ** self.order
        if states > MAX_MARKOV_STATES:
            raise ValueError(f"order-{self.order} chain has {states} pasts, limit is {MAX_MARKOV_STATES}")
        if len(self.transitions) != states:
            raise ValueError(f"expected {states} transition rows, got {len(self.transitions)}")
        _check_rows(self.transitions, self.alphabet_size, "transition")
        if self.initial != "stationary":
            _check_rows([self.initial], states, "initial")
        return self

    def transition_array(self) -> np.ndarray:
        return np.asarray(self.transitions, dtype=np.float64)


class HmmSpec(BaseModel):
    """Binary-output HMM; the hidden chain always starts from its stationary law.

    Give either per-state ``rates`` (P(x=1 | state)) or a full ``emissions`` table.
    """

    kind: Literal["hmm"] = "hmm"
    transitions: list[list[float]]
    rates: Optional[list[float]] = None
    emissions: Optional[list[list[float]]] = None

    @model_validator(mode="after")
    def _validate_tables(self) -> "HmmSpec":
        states = len(self.transitions)
        if states < 1:
            raise ValueError("an HMM needs at least one hidden state")
        _check_rows(self.transitions, states, "transition")
        if (self.rates is None) == (self.emissions is None):
            raise ValueError("give exactly one of rates or emissions")
        if self.rates is not None:
            if len(self.rates) != states or any(not 0 <= r <= 1 for r in self.rates):
                raise ValueError("rates must give one probability per hidden state")
        else:
            if len(self.emissions) != states:
                raise ValueError("emissions must have one row per hidden state")
            _check_rows(self.emissions, 2, "emission")
        return self

    @property
    def num_states(self) -> int:
        return len(self.transitions)

    def transition_array(self) -> np.ndarray:
        return np.asarray(self.transitions, dtype=np.float64)

    def emission_array(self) -> np.ndarray:
        if self.emissions is not None:
            return np.asarray(self.emissions, dtype=np.float64)
        r = np.asarray(self.rates, dtype=np.float64)
        return np.column_stack([1.0 - r, r])


class ExplicitIsi(BaseModel):
    """Entry j-1 of ``probabilities`` is P(Y = j)."""

    source: Literal["explicit"] = "explicit"
    probabilities: list[float] = Field(min_length=1)

    @model_validator(mode="after")
    def _validate_probabilities(self) -> "ExplicitIsi":
        _check_rows([self.probabilities], len(self.probabilities), "ISI")
        return self


class GeometricIsi(BaseModel):
    source: Literal["geometric"] = "geometric"
    p: float = Field(gt=0, le=1)
    tail_tol: Optional[float] = Field(default=None, gt=0, le=1e-6)


class GammaMixtureIsi(BaseModel):
    """mu * Gamma(alpha1, scale=beta1) + (1 - mu) * Gamma(alpha2, scale=beta2), discretized."""

    source: Literal["gamma_mixture"] = "gamma_mixture"
    mu: float = Field(gt=0, le=1)
    alpha1: float = Field(gt=0)
    beta1: float = Field(gt=0)
    alpha2: float = Field(default=1.0, gt=0)
    beta2: float = Field(default=1.0, gt=0)
    tail_tol: Optional[float] = Field(default=None, gt=0, le=1e-6)


IsiSource = Annotated[Union[ExplicitIsi, GeometricIsi, GammaMixtureIsi], Field(discriminator="source")]


class RenewalSpec(BaseModel):
    kind: Literal["renewal"] = "renewal"
    isi: IsiSource


class TreeSpec(BaseModel):
    """Tree source: ``contexts`` maps each suffix (time order) to P(next = 1)."""

    kind: Literal["tree"] = "tree"
    contexts: dict[str, float]

    @model_validator(mode="after")
    def _validate_tree(self) -> "TreeSpec":
        SuffixSet.from_contexts(self.contexts.keys())
        if any(not 0 <= v <= 1 for v in self.contexts.values()):
            raise ValueError("context parameters must be probabilities")
        return self

    def suffix_set(self) -> SuffixSet:
        return SuffixSet.from_contexts(self.contexts.keys())


ProcessSpec = Annotated[
    Union[IidSpec, MarkovSpec, HmmSpec, RenewalSpec, TreeSpec],
    Field(discriminator="kind"),
]

_SPEC_ADAPTER: TypeAdapter = TypeAdapter(ProcessSpec)


def parse_process_spec(document: Union[str, bytes, dict[str, Any]]) -> ProcessSpec:
    """Validate a JSON string or already-decoded mapping into a ProcessSpec."""
    if isinstance(document, (str, bytes)):
        return _SPEC_ADAPTER.validate_json(document)
    return _SPEC_ADAPTER.validate_python(document)


def dump_process_spec(spec: ProcessSpec) -> dict[str, Any]:
    return _SPEC_ADAPTER.dump_python(spec, mode="json")
