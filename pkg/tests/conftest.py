import json
from pathlib import Path

import pytest
from hypothesis import settings

from chx.config import Config

settings.register_profile("chx", max_examples=60, deadline=None)
settings.load_profile("chx")

DATA = Path(__file__).resolve().parents[1] / "src" / "chx" / "data"


@pytest.fixture(scope="session")
def cfg():
    return Config()


@pytest.fixture
def data():
    return lambda name: json.loads((DATA / name).read_text())
