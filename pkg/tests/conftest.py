import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from servers.elliptic.weierstrass import random_generic_model  # noqa: E402
from servers.nikulin.nikulin import build_model  # noqa: E402
from workbench.host import K3Workbench  # noqa: E402
from workbench.settings import WorkbenchSettings  # noqa: E402

SEED = 20240611


@pytest.fixture(scope="session")
def settings():
    return WorkbenchSettings(seed=SEED, random_models=20, ns_sweep_max=12, log_level="INFO")


@pytest.fixture(scope="session")
def k3_model():
    return build_model()


@pytest.fixture(scope="session")
def generic_models():
    rng = random.Random(SEED)
    return [random_generic_model(rng) for _ in range(20)]


@pytest.fixture
def workbench(settings):
    return K3Workbench(settings)
