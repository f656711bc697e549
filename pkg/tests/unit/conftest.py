"""
Unit tests.

Everything here runs in seconds on small inputs; acceptance-scale checks
live in tests/integration and carry the ``slow`` marker.

    python -m pytest tests/unit -v
"""
