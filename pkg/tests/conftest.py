import os
import sys

import numpy as np
import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(ROOT, 'src'))
sys.path.insert(0, os.path.join(ROOT, 'app'))

from geometry.core import Configuration  # noqa: E402

EXAMPLES_DIR = os.path.join(ROOT, 'config', 'examples')
GOLDEN_DIR = os.path.join(ROOT, 'tests', 'golden')


@pytest.fixture
def collinear4():
    return Configuration.from_centers([(0, 0, 0), (3, 0, 0), (6, 0, 0), (9, 0, 0)])


@pytest.fixture
def touching_collinear4():
    return Configuration.from_centers([(0, 0, 0), (2, 0, 0), (4, 0, 0), (6, 0, 0)])


@pytest.fixture
def tri_tang3():
    return Configuration.from_centers([(0, 1, 0), (2, -1, 0), (4, 1, 0)])


@pytest.fixture
def two_permutation5():
    return Configuration.from_centers([(0, 0, 0), (4, 1, 0), (4, -1, 0), (8, 0, 0), (12, 0, 0)])


@pytest.fixture
def isosceles3():
    """Realizes both ABC and ACB."""
    return Configuration.from_centers([(0, 0, 0), (2.5, 1.05, 0), (2.5, -1.05, 0)])


@pytest.fixture
def hyperboloidal_t():
    return (-0.5, 3.0, 0.2, -2.5)


@pytest.fixture
def example_path():
    def _path(name):
        return os.path.join(EXAMPLES_DIR, name)
    return _path


@pytest.fixture
def golden_lines():
    def _lines(name):
        with open(os.path.join(GOLDEN_DIR, name)) as f:
            return [line.rstrip('\n') for line in f if line.strip()]
    return _lines


@pytest.fixture(autouse=True)
def run_log_dir(tmp_path, monkeypatch):
    import settings
    path = tmp_path / 'metadata'
    monkeypatch.setattr(settings, 'RUN_LOG_DIR', str(path))
    return path


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
