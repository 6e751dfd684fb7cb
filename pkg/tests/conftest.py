import pytest

from nashcp.config import get_settings


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Every test starts from default settings, whatever the shell exports."""
    for name in ('NASHCP_EPS', 'NASHCP_SEED', 'NASHCP_LP_BACKEND', 'NASHCP_LOG_LEVEL', 'NASHCP_LOG_JSON'):
        monkeypatch.delenv(name, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
