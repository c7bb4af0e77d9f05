import json
import sys
from pathlib import Path

import pytest

TESTS_DIR = Path(__file__).resolve().parent
sys.path.insert(0, str(TESTS_DIR))

from squiggle import RecognizerConfig, fixture_library_path, load_library  # noqa: E402

try:
    from hypothesis import settings

    settings.register_profile("suite", deadline=None, max_examples=60)
    settings.load_profile("suite")
except ImportError:  # pragma: no cover - hypothesis is a test dependency
    pass


@pytest.fixture(scope="session")
def cfg():
    return RecognizerConfig()


@pytest.fixture(scope="session")
def demo15(cfg):
    return load_library(fixture_library_path("demo15"), cfg)


@pytest.fixture(scope="session")
def prototype33(cfg):
    return load_library(fixture_library_path("prototype33"), cfg)


@pytest.fixture(scope="session")
def demo_raw():
    return json.loads(Path(fixture_library_path("demo15_raw")).read_text())


@pytest.fixture(scope="session")
def golden():
    return json.loads((TESTS_DIR / "data" / "golden_traces.json").read_text())
