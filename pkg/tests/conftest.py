"""
Shared fixtures: repository root on sys.path, prebuilt schemes and toy schedules
"""
import os
import sys

import numpy as np
import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

from construct.construction import toy_construction  # noqa: E402
from weights.weight_scheme import build_scheme  # noqa: E402


@pytest.fixture(scope='session')
def scheme_05():
    return build_scheme(0.5)


@pytest.fixture(scope='session')
def scheme_04():
    return build_scheme(0.4)


@pytest.fixture
def toy():
    """l = 1, L = [1, 2], m = 1, M = [3]"""
    return toy_construction([1, 2], [3], delta=0.5)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def isolated_cache(tmp_path):
    from utils.result_cache import ResultCache
    return ResultCache(cache_dir=str(tmp_path / 'cache'))
