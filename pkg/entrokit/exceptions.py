"""
Error hierarchy shared by the library and the CLI.

Library code raises these; only ``entrokit.main`` turns them into exit codes.
"""


class EntrokitError(Exception):
    """Base error; ``exit_code`` is what the CLI returns for it."""

    exit_code = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class ConfigError(EntrokitError):
    """Invalid spec, plan or command-line input."""

    exit_code = 2


class DomainError(ConfigError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class BoundsError(DomainError):
    """A match window that does not lie inside the data."""


class CapacityError(DomainError):
    """A word length whose packed key does not fit in 64 bits."""


class NonErgodicChainError(ConfigError):
    """Markov chain without a unique, reachable stationary distribution."""


class EstimationError(EntrokitError):
    """Runtime failure while computing an estimate."""

    exit_code = 3


class InsufficientEventsError(EstimationError):
    """Renewal data with fewer than two ones."""
