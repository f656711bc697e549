#!/usr/bin/env python3
"""
entrokit command-line interface
Usage: entrokit --help   (or python -m entrokit --help)

Exit codes: 0 success, 2 invalid configuration or input, 3 estimation failure.
"""

import argparse
import logging
import sys
from typing import Optional, Sequence

from dotenv import load_dotenv
from pydantic import ValidationError

from . import __version__
from .commands import COMMANDS
from .config import get_settings
from .exceptions import ConfigError, EntrokitError
from .utils.console import print_error

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entrokit",
        description="Entropy-rate estimation: generators, estimators, bootstrap and experiments",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", help="Logging level (default: ENTROKIT_LOG_LEVEL or INFO)")
    subparsers = parser.add_subparsers(dest="command", help="Commands")
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return ConfigError.exit_code

    logging.basicConfig(
        level=(args.log_level or get_settings().log_level).upper(),
        format='%(levelname)s: %(message)s',
    )

    try:
        return args.handler(args)
    except ValidationError as e:
        print_error(f"Invalid input: {e}")
        return ConfigError.exit_code
    except EntrokitError as e:
        print_error(e.detail)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
