import numpy as np
import pytest

from range_enclosure.core import OmegaBox, ProblemParams


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# published figure configurations
FIG_A = (ProblemParams(6.0, 4.0), OmegaBox(1.0, np.inf, 0.0, 11.0))
FIG_B = (ProblemParams(6.0, 4.0), OmegaBox(-np.inf, np.inf, 4.0, 11.0))
FIG_C = (ProblemParams(4.0, 4.0), OmegaBox(-32.0, 4.0, 0.0, 4.0))
