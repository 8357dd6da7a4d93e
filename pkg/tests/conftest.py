import numpy as np
import pytest

from pershock.flux import ShockData, burgers
from pershock.profile import solve_profile
from pershock.signal import PeriodicSignal


@pytest.fixture(scope="session")
def fl():
    return burgers()


@pytest.fixture(scope="session")
def ub_sin03():
    """Boundary sinusoid with amplitude 0.3 (inviscid scenarios)."""
    return PeriodicSignal.sinusoid(-1.5, 0.3, 1.0)


@pytest.fixture(scope="session")
def ub_sin005():
    """Small-amplitude sinusoid inside the viscous contraction regime."""
    return PeriodicSignal.sinusoid(-1.5, 0.05, 1.0)


@pytest.fixture(scope="session")
def shock_inviscid(fl):
    """Shock between 0.5 and the far-field state of the amplitude-0.3 wave."""
    return ShockData.from_states(fl, 0.5, -float(np.sqrt(2.295)))


@pytest.fixture(scope="session")
def profile_burgers(fl):
    return solve_profile(fl, ShockData.from_states(fl, 0.5, -1.5))


@pytest.fixture(scope="session")
def lo_wave(fl, ub_sin03):
    from pershock.inviscid_wave import solve_wave
    return solve_wave(fl, ub_sin03)


@pytest.fixture(scope="session")
def visc_wave(fl, ub_sin005):
    from pershock.spectral_wave import solve_periodic_wave
    return solve_periodic_wave(fl, ub_sin005)
