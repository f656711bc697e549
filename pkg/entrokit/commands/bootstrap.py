import argparse
import logging

from ..config import get_settings
from ..models.estimators import BootstrapConfig, BootstrapKind, EstimatorMethod
from ..services.bootstrap import stationary_bootstrap_stderr
from ..services.export_service import write_csv
from ..services.matchlen import fixed_window_profile
from ..services.sequence_io import read_sequence
from .common import emit

logger = logging.getLogger(__name__)

_KINDS = {
    EstimatorMethod.HHAT_NK.value: BootstrapKind.HHAT,
    EstimatorMethod.HTILDE_NK.value: BootstrapKind.HTILDE,
}


def register(subparsers) -> None:
    parser = subparsers.add_parser("bootstrap", help="Stationary-bootstrap standard error of a fixed-window estimate")
    parser.add_argument("--method", required=True, choices=sorted(_KINDS))
    parser.add_argument("--n", type=int, required=True, help="Window length")
    parser.add_argument("--k", type=int, required=True, help="Number of match lengths")
    parser.add_argument("--B", dest="replicas", type=int, help="Bootstrap replicas (default: settings)")
    parser.add_argument("--p", type=float, help="Block parameter (default: from the autocorrelogram)")
    parser.add_argument("--noise-band", type=float, help="Multiplier c of the c/sqrt(k) band")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--in", dest="input", required=True, help="Sequence file")
    parser.add_argument("--out", help="Output CSV file (default: stdout)")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    config = BootstrapConfig(
        replicas=args.replicas or get_settings().bootstrap_replicas,
        p=args.p,
        seed=args.seed,
        noise_band=args.noise_band,
    )
    x = read_sequence(args.input)
    profile = fixed_window_profile(x, args.n, args.k)
    result = stationary_bootstrap_stderr(profile, _KINDS[args.method], config)
    emit(
        write_csv(
            ["method", "n", "k", "estimate", "stderr", "p", "B"],
            [[args.method, args.n, args.k, result.estimate, result.stderr, result.block_param, config.replicas]],
        ),
        args.out,
    )
    return 0
