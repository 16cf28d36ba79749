from pathlib import Path

import pytest

from gripsim.config import default_config

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"


@pytest.fixture(scope="session")
def cfg():
    return default_config()


@pytest.fixture(scope="session")
def scenario_dir():
    return SCENARIO_DIR
