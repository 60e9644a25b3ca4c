import sys
from pathlib import Path

import numpy as np
import pytest

ROOT_DIR = Path(__file__).resolve().parent.parent
SRC_DIR = ROOT_DIR / "src"
for p in (ROOT_DIR, SRC_DIR):
    if str(p) not in sys.path:
        sys.path.insert(0, str(p))

from ssk_lab.ensembles import sample_spectrum, spectrum_from_values  # noqa: E402
from ssk_lab.saddle.quadrature import ContourSpec  # noqa: E402


@pytest.fixture(scope="function")
def temp_test_dir(tmp_path_factory):
    """Temporary directory for a single test (cleaned up by pytest)."""
    return tmp_path_factory.mktemp("test_run")


@pytest.fixture
def tight_spec():
    return ContourSpec(panel_target_error=1e-12)


@pytest.fixture
def zero_diag_spectrum():
    return sample_spectrum("GOE_ZERO_DIAG", 60, seed=12345)


@pytest.fixture
def small_spectra():
    """Ten zero-diagonal GOE spectra of size 6."""
    return [sample_spectrum("GOE_ZERO_DIAG", 6, seed=1000 + s) for s in range(10)]


@pytest.fixture
def two_level_spectrum():
    return spectrum_from_values(np.array([0.7, -0.4]), "GOE_DENSE", seed=0)
