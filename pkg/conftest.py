import os
import sys

import numpy as np
import pytest

# Tests import the flat modules from the repository root
sys.path.insert(0, os.path.dirname(__file__))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
