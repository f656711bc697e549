import argparse
import logging

from ..models.processes import RngSeed
from ..services.generators import generate
from ..services.sequence_io import format_sequence
from ..utils.console import print_success
from .common import emit, load_spec

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("generate", help="Draw a realization of a process spec")
    parser.add_argument("--spec", required=True, help="Process spec JSON file")
    parser.add_argument("--n", type=int, required=True, help="Number of symbols")
    parser.add_argument("--seed", type=int, default=0, help="Master seed")
    parser.add_argument("--stream", type=int, default=0, help="Stream id under the seed")
    parser.add_argument("--out", help="Output sequence file (default: stdout)")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    spec = load_spec(args.spec)
    x = generate(spec, args.n, RngSeed(seed=args.seed, stream_id=args.stream))
    emit(format_sequence(x), args.out)
    if args.out:
        print_success(f"{x.length} symbols of a {spec.kind} process written to {args.out}")
    return 0
