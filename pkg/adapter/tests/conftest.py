from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def clips(fixtures_dir):
    return sorted(p for p in fixtures_dir.glob("clip_*.wav"))
