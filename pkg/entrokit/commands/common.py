"""Input loading and output helpers shared by the subcommands."""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Union

from ..exceptions import ConfigError
from ..models.experiments import ExperimentPlan
from ..models.processes import ProcessSpec, parse_process_spec

logger = logging.getLogger(__name__)


def _read_text(path: Union[str, Path], what: str) -> str:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"{what} file not found: {path}")
    return path.read_text(encoding="utf-8")


def load_spec(path: Union[str, Path]) -> ProcessSpec:
    text = _read_text(path, "spec")
    try:
        json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"spec {path} is not valid JSON: {e}")
    return parse_process_spec(text)


def load_plan(path: Union[str, Path]) -> ExperimentPlan:
    text = _read_text(path, "plan")
    try:
        json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"plan {path} is not valid JSON: {e}")
    return ExperimentPlan.model_validate_json(text)


def emit(content: Union[str, bytes], out: Optional[str]) -> None:
    """Write ``content`` to ``out`` or, when no path is given, to stdout."""
    if out is None:
        if isinstance(content, bytes):
            sys.stdout.buffer.write(content)
            sys.stdout.flush()
        else:
            sys.stdout.write(content)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    if isinstance(content, bytes):
        path.write_bytes(content)
    else:
        path.write_text(content, encoding="utf-8")
    logger.info(f"Wrote {path}")


def parse_depth(value: str) -> Optional[int]:
    """argparse type for ``--depth``: a non-negative integer or ``inf``."""
    if value.lower() in ("inf", "infinite", "none"):
        return None
    try:
        depth = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"depth must be an integer or 'inf', got {value!r}")
    if depth < 0:
        raise argparse.ArgumentTypeError("depth must be non-negative")
    return depth


def parse_grid(value: str) -> list[int]:
    """argparse type for comma-separated integer grids; accepts 1e5-style entries."""
    try:
        return [int(float(item)) for item in value.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must be comma-separated integers, got {value!r}")
