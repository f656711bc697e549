import argparse
import logging
from collections import defaultdict

from ..exceptions import ConfigError, DomainError
from ..models.experiments import CurveAxis
from ..services.experiment_service import bias_curve, linear_fit, plan_hash
from ..services.export_service import export_service
from ..utils.console import print_info, print_success
from .common import emit, load_plan, parse_grid

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("bias-curve", help="Bias and stderr of the window estimators across a grid of n or k")
    parser.add_argument("--plan", required=True, help="Experiment plan JSON file")
    parser.add_argument("--axis", required=True, choices=[a.value for a in CurveAxis])
    parser.add_argument("--grid", required=True, type=parse_grid, help="Comma-separated n (or k) values")
    parser.add_argument("--out", help="Output file (default: stdout, CSV only)")
    parser.add_argument("--format", choices=["csv", "xlsx"], default="csv")
    parser.add_argument("--threads", type=int, help="Worker threads (default: ENTROKIT_THREADS)")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    if args.format == "xlsx" and not args.out:
        raise ConfigError("xlsx output needs --out")
    plan = load_plan(args.plan)
    axis = CurveAxis(args.axis)
    rows = bias_curve(plan, axis, args.grid, args.threads)

    by_estimator = defaultdict(list)
    for row in rows:
        if row.bias is not None:
            by_estimator[row.estimator].append((row.axis_value, row.bias))
    for estimator, points in by_estimator.items():
        try:
            fit = linear_fit([p[0] for p in points], [p[1] for p in points])
        except DomainError:
            continue
        print_info(f"{estimator}: bias ~ {fit.slope:.4g} * x + {fit.intercept:.4g} (R^2 = {fit.r_squared:.3f})")

    if args.format == "xlsx":
        metadata = {"plan_hash": plan_hash(plan), "axis": axis.value, "grid": ",".join(map(str, args.grid))}
        emit(export_service.curve_xlsx(rows, metadata).getvalue(), args.out)
    else:
        emit(export_service.curve_csv(rows), args.out)
    if args.out:
        print_success(f"Curve written to {args.out}")
    return 0
