import math

import numpy as np
import pytest

from qotto.two_level import CycleConfig


def random_config(rng, quasi_static=False, equal_shapes=False):
    """Cycle parameters drawn over the ranges used throughout the tests."""
    beta_h = rng.uniform(0.2, 5.0)
    beta_c = beta_h * rng.uniform(1.05, 10.0)
    gamma_c = rng.uniform(1.2, 6.0)
    gamma_h = gamma_c if equal_shapes else rng.uniform(1.2, 6.0)
    if quasi_static:
        tau_c = tau_h = math.inf
    else:
        tau_c, tau_h = rng.uniform(0.01, 5.0, size=2)
    return CycleConfig.build(
        omega_c=rng.uniform(0.05, 2.0), omega_h=rng.uniform(0.05, 3.0),
        gamma_c=gamma_c, gamma_h=gamma_h, beta_c=beta_c, beta_h=beta_h,
        tau_c=tau_c, tau_h=tau_h,
        sigma_c=rng.uniform(0.2, 3.0), sigma_h=rng.uniform(0.2, 3.0),
        tau_adi=rng.uniform(0.0, 2.0))


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def fig2b():
    """Quasi-static trade-off point: omega_c=0.2, omega_h=0.85, beta_c=10, beta_h=2."""
    return CycleConfig.build(0.2, 0.85, 2.0, 1.78, 10.0, 2.0)
