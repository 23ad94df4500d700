import numpy as np
import pytest
from click.testing import CliRunner

from ptscatter.physics.eptrace import locate_ep
from ptscatter.physics.potential import LEAD, DimerParams, LayeredPotential, Region, build_dimer
from ptscatter.physics.spectrum import count_peaks, sweep

# published doublet of the reference geometry, eV
REFERENCE_DOUBLET = (0.2086, 0.2615)
# doublet this model gives for the same geometry with the free-electron mass, eV
MEASURED_DOUBLET = (0.22146, 0.24519)


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: end-to-end runs over many sweeps")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def params():
    return DimerParams()


@pytest.fixture(scope="session")
def hermitian_sweep():
    return sweep(build_dimer(DimerParams()), 0.15, 0.30, 4001)


def random_potential(rng, n_interior=None) -> LayeredPotential:
    n_interior = int(rng.integers(1, 6)) if n_interior is None else n_interior
    regions = [
        Region(rng.uniform(0.05, 0.6), rng.uniform(0.0, 2.0), rng.uniform(-0.5, 0.5))
        for _ in range(n_interior)
    ]
    return LayeredPotential([LEAD, *regions, LEAD])


@pytest.fixture(scope="session")
def ep_bracket():
    """(gamma with two maxima, gamma with one) from a coarse scan of the reference dimer."""
    previous = 0.0
    for gamma in np.arange(1, 81) * 0.001:
        if count_peaks(build_dimer(DimerParams(gamma=float(gamma))), (0.15, 0.30)) < 2:
            return previous, float(gamma)
        previous = float(gamma)
    pytest.skip("doublet does not coalesce below gamma = 0.08 eV")


@pytest.fixture(scope="session")
def ep_location(ep_bracket):
    return locate_ep(DimerParams(), *ep_bracket, tol_gamma=1e-6)


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture(scope="session")
def application():
    import ptscatter.__main__  # noqa: F401  registers the command modules
    from ptscatter import application

    return application


def free_potential(*widths) -> LayeredPotential:
    return LayeredPotential([LEAD, *(Region(width) for width in widths), LEAD])
