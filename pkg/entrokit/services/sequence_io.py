"""
Sequence files: one ASCII digit per symbol, lines concatenated.

Whitespace is skipped on read, so wrapped and unwrapped files are equivalent.
"""

import logging
from pathlib import Path
from typing import Optional, Union

import numpy as np

from ..exceptions import ConfigError
from ..models.sequences import SymbolSequence

logger = logging.getLogger(__name__)

_WHITESPACE = np.frombuffer(b" \t\r\n\x0b\x0c", dtype=np.uint8)


def parse_sequence(raw: bytes, alphabet_size: Optional[int] = None) -> SymbolSequence:
    data = np.frombuffer(raw, dtype=np.uint8)
    data = data[~np.isin(data, _WHITESPACE)]
    digits = data.astype(np.int64) - ord("0")
    if digits.size and (digits.min() < 0 or digits.max() > 9):
        raise ConfigError("sequence files may only contain the digits 0-9 and whitespace")
    if alphabet_size is None:
        alphabet_size = max(int(digits.max()) + 1 if digits.size else 2, 2)
    return SymbolSequence(digits, alphabet_size)


def read_sequence(path: Union[str, Path], alphabet_size: Optional[int] = None) -> SymbolSequence:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"sequence file not found: {path}")
    sequence = parse_sequence(path.read_bytes(), alphabet_size)
    logger.debug("Read %d symbols (alphabet %d) from %s", sequence.length, sequence.alphabet_size, path)
    return sequence


def format_sequence(x: SymbolSequence, line_width: int = 80) -> bytes:
    if x.alphabet_size > 10:
        raise ConfigError(f"digit files hold alphabets of at most 10 symbols, not {x.alphabet_size}")
    text = (x.symbols + ord("0")).tobytes()
    lines = [text[i:i + line_width] for i in range(0, len(text), line_width)]
    return b"\n".join(lines) + b"\n"


def write_sequence(x: SymbolSequence, path: Union[str, Path], line_width: int = 80) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(format_sequence(x, line_width))
    logger.info("Wrote %d symbols to %s", x.length, path)
    return path
