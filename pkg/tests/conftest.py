import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from erimap.bundle import load_bundle

BUNDLE_DIR = Path(__file__).parent.parent / "scenarios" / "henkel"


@pytest.fixture(scope="session")
def henkel_bundle():
    bundle, _ = load_bundle(BUNDLE_DIR)
    return bundle


@pytest.fixture()
def henkel_engine():
    _, engine = load_bundle(BUNDLE_DIR)
    return engine
