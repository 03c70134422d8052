import os
import time

import pytest

SESSION_START = time.monotonic()


@pytest.fixture(scope="session", autouse=True)
def isolated_cache(tmp_path_factory):
    """Keep the character-table cache out of the user's home directory."""
    path = tmp_path_factory.mktemp("cache")
    old = os.environ.get("SPINHURWITZ_CACHE_DIR")
    os.environ["SPINHURWITZ_CACHE_DIR"] = str(path)
    yield path
    if old is None:
        os.environ.pop("SPINHURWITZ_CACHE_DIR", None)
    else:
        os.environ["SPINHURWITZ_CACHE_DIR"] = old


def pytest_collection_modifyitems(items):
    # the wall-time criterion measures the whole session, so it runs last
    last = [it for it in items if it.get_closest_marker("session_last")]
    rest = [it for it in items if not it.get_closest_marker("session_last")]
    items[:] = rest + last


def pytest_configure(config):
    config.addinivalue_line("markers", "session_last: run after every other test")
