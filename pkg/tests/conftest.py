import numpy as np
import pytest

from octavib import bifurcation, force_field, spectral


@pytest.fixture(scope="session")
def params():
    return force_field.REFERENCE_PARAMS


@pytest.fixture(scope="session")
def equilibrium(params):
    return force_field.find_equilibrium(params)


@pytest.fixture(scope="session")
def coefficients(equilibrium):
    return spectral.StiffnessCoefficients.from_equilibrium(equilibrium)


@pytest.fixture(scope="session")
def labeled_spectrum(equilibrium):
    return spectral.spectrum_at_equilibrium(equilibrium)


@pytest.fixture(scope="session")
def engine(labeled_spectrum):
    return bifurcation.engine_from_spectrum(labeled_spectrum)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)


def random_configuration(rng, spread=0.25):
    """Admissible random configuration near the unit octahedron."""
    base = force_field.OCTAHEDRON * (1.0 + 0.3 * rng.random())
    return base + spread * rng.normal(size=(6, 3))
