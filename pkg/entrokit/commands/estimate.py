import argparse
import logging

from ..models.estimators import EstimatorConfig, EstimatorMethod
from ..services.estimator_service import EstimatorService
from ..services.export_service import write_csv
from ..services.sequence_io import read_sequence
from .common import emit, parse_depth

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("estimate", help="Estimate the entropy rate of a sequence file")
    parser.add_argument("--method", required=True, choices=[m.value for m in EstimatorMethod])
    parser.add_argument("--n", type=int, help="Window length (fixed window) or last position (increasing window)")
    parser.add_argument("--k", type=int, help="Number of match lengths (fixed window)")
    parser.add_argument("--w", type=int, help="Word length (plugin)")
    parser.add_argument("--depth", type=parse_depth, default=None, help="CTW depth D or 'inf' (default inf)")
    parser.add_argument("--alphabet", type=int, help="Alphabet size (default: inferred from the data)")
    parser.add_argument("--in", dest="input", required=True, help="Sequence file")
    parser.add_argument("--out", help="Output CSV file (default: stdout)")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    config = EstimatorConfig(method=args.method, n=args.n, k=args.k, w=args.w, depth=args.depth)
    x = read_sequence(args.input, args.alphabet)
    value = EstimatorService(x).estimate(config)
    logger.info("%s on %d symbols: %.6f", config.label, x.length, value)
    emit(write_csv(["method", "estimate"], [[config.method.value, value]]), args.out)
    return 0
