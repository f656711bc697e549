"""
Global fixtures.

Settings are cached process-wide, so every test starts from a clean cache
with a small, fixed thread count and no on-disk truth cache.
"""
import pytest

from entrokit.config import get_settings
from entrokit.services.experiment_service import get_truth_cache


@pytest.fixture(autouse=True)
def clean_settings(monkeypatch):
    """Fresh settings per test: 2 threads, no cache directory."""
    monkeypatch.setenv("ENTROKIT_THREADS", "2")
    monkeypatch.delenv("ENTROKIT_CACHE_DIR", raising=False)
    get_settings.cache_clear()
    get_truth_cache.cache_clear()
    yield
    get_settings.cache_clear()
    get_truth_cache.cache_clear()


@pytest.fixture
def seed() -> int:
    return 20240611
