import argparse
import logging

from ..config import get_settings
from ..exceptions import ConfigError
from ..models.processes import HmmSpec
from ..services.export_service import write_csv
from ..services.hmm_oracle import hmm_entropy_estimate
from .common import emit, load_spec

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("hmm-entropy", help="Entropy rate of an HMM from exact likelihoods")
    parser.add_argument("--spec", required=True, help="HMM spec JSON file")
    parser.add_argument("--n", type=int, required=True, help="Realization length")
    parser.add_argument("--reps", type=int, help="Number of realizations (default: settings)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", help="Output CSV file (default: stdout)")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    spec = load_spec(args.spec)
    if not isinstance(spec, HmmSpec):
        raise ConfigError(f"hmm-entropy needs an hmm spec, got {spec.kind}")
    reps = args.reps or get_settings().hmm_truth_reps
    result = hmm_entropy_estimate(spec, args.n, reps, args.seed)
    rows = [["estimate", result.estimate], ["stderr", result.stderr]]
    rows += [[f"rep{r}", value] for r, value in enumerate(result.per_repetition)]
    emit(write_csv(["statistic", "value"], rows), args.out)
    return 0
