"""
Write the experiment plans under scripts/plans/.

The small plans (IID row, 3-state HMM, renewal mixtures) are checked in as
written here; the tradeoff sweep, the 50-state HMM and the analogue Markov
rows carry computed tables and are only produced by this script.

Usage:
    python scripts/build_plans.py [--out scripts/plans]
"""

import argparse
import json
import sys
from pathlib import Path

from entrokit.models.experiments import ExperimentPlan
from entrokit.models.processes import dump_process_spec
from entrokit.services.experiment_service import tradeoff_plan
from entrokit.services.process_presets import (
    ANALOGUE_ENTROPIES,
    analogue_markov_chain,
    fifty_state_hmm,
    gamma_mixture_renewal,
    iid_preset,
    low_entropy_iid,
    three_state_hmm,
)

MILLION = 1_000_000
WHOLE_PAST = MILLION - 1000

# plug-in at two word lengths, both increasing-window LZ estimators and infinite-depth CTW
BATTERY = [
    {"method": "plugin", "w": 15},
    {"method": "plugin", "w": 20},
    {"method": "hhat-n", "n": WHOLE_PAST},
    {"method": "htilde-n", "n": WHOLE_PAST},
    {"method": "ctw"},
]


def _plan(model: str, spec, estimators, repetitions: int = 20, **extra) -> dict:
    plan = ExperimentPlan.model_validate({
        "model": model,
        "spec": dump_process_spec(spec),
        "estimators": estimators,
        "repetitions": repetitions,
        "data_length": MILLION,
        "seed": 2024,
        **extra,
    })
    return plan.model_dump(mode="json", exclude_none=True)


def build_plans() -> dict[str, dict]:
    plans = {
        "tradeoff_iid.json": tradeoff_plan(
            MILLION, [1, 10, 100, 1000, 10000], iid_preset(0.25), repetitions=20, seed=2024, model="iid-0.25",
        ).model_dump(mode="json", exclude_none=True),
        "iid_row.json": _plan("iid-0.25", iid_preset(0.25), BATTERY),
        "iid_low_entropy.json": _plan("iid-low", low_entropy_iid(), BATTERY),
        "hmm_three_state.json": _plan(
            "hmm-3", three_state_hmm(), BATTERY, truth_length=MILLION, truth_repetitions=10,
        ),
        "hmm_fifty_state.json": _plan(
            "hmm-50", fifty_state_hmm(), BATTERY, truth_length=MILLION, truth_repetitions=10,
        ),
    }
    for (alpha2, beta2, mu) in [(10.0, 20.0, 0.8), (50.0, 20.0, 0.8), (50.0, 50.0, 0.9)]:
        name = f"renewal_{int(alpha2)}_{int(beta2)}.json"
        plans[name] = _plan(
            f"renewal-({int(alpha2)},{int(beta2)})",
            gamma_mixture_renewal(mu, alpha2, beta2),
            [{"method": "renewal"}, *BATTERY],
        )
    for order, entropy in ANALOGUE_ENTROPIES.items():
        plans[f"markov_order{order}.json"] = _plan(
            f"markov-{order}", analogue_markov_chain(order, entropy), BATTERY,
        )
    return plans


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.strip().splitlines()[0])
    parser.add_argument("--out", default=str(Path(__file__).parent / "plans"))
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, plan in build_plans().items():
        (out / name).write_text(json.dumps(plan, indent=2) + "\n", encoding="utf-8")
        print(f"  ✓ {name}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
