"""entrokit - entropy-rate estimation toolkit."""

__version__ = "1.0.0"
