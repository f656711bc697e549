import argparse
import logging

from ..exceptions import ConfigError
from ..services.experiment_service import plan_hash, run_experiment_sync
from ..services.export_service import export_service
from ..utils.console import print_info, print_success, print_warning
from .common import emit, load_plan

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("experiment", help="Run an experiment plan and tabulate bias/stderr/rmse")
    parser.add_argument("--plan", required=True, help="Experiment plan JSON file")
    parser.add_argument("--out", help="Output file (default: stdout, CSV only)")
    parser.add_argument("--format", choices=["csv", "xlsx"], default="csv")
    parser.add_argument("--threads", type=int, help="Worker threads (default: ENTROKIT_THREADS)")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    if args.format == "xlsx" and not args.out:
        raise ConfigError("xlsx output needs --out")
    plan = load_plan(args.plan)
    print_info(f"Running {plan.model}: {plan.repetitions} x {plan.data_length} symbols, {len(plan.estimators)} estimators")
    reports = run_experiment_sync(plan, args.threads)

    for report in reports:
        if report.failures:
            print_warning(f"{report.estimator}: {len(report.failures)} of {plan.repetitions} repetitions failed")

    if args.format == "xlsx":
        metadata = {"plan_hash": plan_hash(plan), "model": plan.model, "seed": plan.seed}
        emit(export_service.reports_xlsx(reports, metadata).getvalue(), args.out)
    else:
        emit(export_service.reports_csv(reports), args.out)
    if args.out:
        print_success(f"Results written to {args.out}")
    return 0
