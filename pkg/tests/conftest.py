"""Shared reference data and random-state generators for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from cvopo import (
    CovarianceMatrix,
    ModeBasis,
    apply_passive,
    composite,
    make_covariance,
    phase_shift,
    polarization_rotation,
    symplectic_eigenvalues,
)
from cvopo.fixtures import fixture_document
from cvopo.formats import document_to_matrix

# Published covariance table of the self-phase-locked OPO below threshold
# (sigma = 0.9, Omega = 0, plate angle 1.3 deg), signal/idler basis.  Its
# X-P cross entries are not consistent with the plus/minus table below; the
# bundled fig_matrix_a1a2.json fixture therefore carries the exact basis
# change of the plus/minus table instead.
PUBLISHED_A1A2 = np.array(
    [
        [181.192, 0.0, 179.808, -0.255],
        [0.0, 0.386, -0.255, -0.383],
        [179.808, -0.255, 181.192, 0.0],
        [-0.255, -0.383, 0.0, 0.386],
    ]
)

# Same state in the +-45 degree basis, as published.
PUBLISHED_APM = np.array(
    [
        [361.0, 0.0, 0.0, 0.0],
        [0.0, 0.00277, 0.0, 0.0],
        [0.0, 0.0, 1.383, -0.256],
        [0.0, 0.0, -0.256, 0.770],
    ]
)

# After the A- phase shift, as published.
PUBLISHED_APM_OPT = np.diag([361.0, 0.00277, 0.677, 1.476])


def load_fixture_matrix(name: str) -> CovarianceMatrix:
    gamma, _ = document_to_matrix(fixture_document(name))
    return gamma


@pytest.fixture
def apm_state() -> CovarianceMatrix:
    return load_fixture_matrix("fig_matrix_apm.json")


@pytest.fixture
def a1a2_state() -> CovarianceMatrix:
    return load_fixture_matrix("fig_matrix_a1a2.json")


def random_physical_state(rng: np.random.Generator) -> CovarianceMatrix:
    """Squeezed thermal product state scrambled by random passive optics."""
    t1, t2 = rng.uniform(1.0, 3.0, size=2)
    r1, r2 = rng.uniform(0.0, 1.2, size=2)
    entries = np.diag(
        [
            t1 * np.exp(2.0 * r1),
            t1 * np.exp(-2.0 * r1),
            t2 * np.exp(2.0 * r2),
            t2 * np.exp(-2.0 * r2),
        ]
    )
    state = make_covariance(entries, ModeBasis.SIGNAL_IDLER)
    scramble = composite(
        [
            phase_shift(0, rng.uniform(0.0, 2.0 * np.pi)),
            phase_shift(1, rng.uniform(0.0, 2.0 * np.pi)),
            polarization_rotation(rng.uniform(0.0, np.pi)),
            phase_shift(1, rng.uniform(0.0, 2.0 * np.pi)),
        ]
    )
    return apply_passive(state, scramble)


def random_standard_form_state(rng: np.random.Generator) -> CovarianceMatrix:
    """Physical state in standard form, biased toward correlated cross terms."""
    while True:
        n = rng.uniform(1.0, 8.0)
        m = rng.uniform(1.0, 8.0)
        bound = np.sqrt(n * m)
        if rng.uniform() < 0.75:
            c_x = rng.uniform(0.0, bound)
            c_p = -rng.uniform(0.0, bound)
        else:
            c_x = rng.uniform(-bound, bound)
            c_p = rng.uniform(-bound, bound)
        entries = np.array(
            [
                [n, 0.0, c_x, 0.0],
                [0.0, n, 0.0, c_p],
                [c_x, 0.0, m, 0.0],
                [0.0, c_p, 0.0, m],
            ]
        )
        state = make_covariance(entries, ModeBasis.SIGNAL_IDLER)
        if symplectic_eigenvalues(state)[0] >= 1.0 - 1e-12:
            return state
