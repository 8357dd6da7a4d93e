import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pershock.errors import EqualStates, NoBracket
from pershock.flux import (FluxModel, ShockData, averaged_speed, burgers,
                           check_lax, flux_by_name,
                           inverse_on_incoming_branch, oleinik_f0, quartic,
                           shock_speed)

states = st.floats(-3.0, 3.0)


def test_shock_speed_examples(fl):
    assert shock_speed(fl, 0.5, -1.5) == pytest.approx(-0.5)
    assert shock_speed(fl, 1.0, -1.0) == pytest.approx(0.0)
    assert shock_speed(fl, 0.0, -2.0) == pytest.approx(-1.0)


def test_shock_speed_equal_states(fl):
    with pytest.raises(EqualStates):
        shock_speed(fl, 0.3, 0.3)


def test_check_lax(fl):
    assert check_lax(fl, ShockData(0.5, -1.5, -0.5))
    # degenerate limit
    assert not check_lax(fl, ShockData.from_states(fl, 1.0, 1.0 - 1e-9))
    # rarefaction-ordered data
    assert not check_lax(fl, ShockData(-1.0, 1.0, 0.0))


def test_oleinik_f0_examples(fl):
    sh = ShockData.from_states(fl, 0.5, -1.5)
    assert oleinik_f0(fl, sh, -0.5) == pytest.approx(-0.5)
    assert oleinik_f0(fl, sh, sh.u_plus) == pytest.approx(0.0, abs=1e-14)
    assert oleinik_f0(fl, sh, sh.u_minus) == pytest.approx(0.0, abs=1e-14)


@given(um=states, up=states, phi=states)
@settings(max_examples=100, deadline=None)
def test_oleinik_anchor_agreement(um, up, phi):
    """Anchoring f0 at either end state gives the same value under R-H."""
    if abs(um - up) < 1e-6:
        return
    fl = quartic()
    sh = ShockData.from_states(fl, um, up)
    at_plus = oleinik_f0(fl, sh, phi)
    at_minus = (-sh.speed * (phi - um) + fl.eval(phi) - fl.eval(um))
    assert at_plus == pytest.approx(at_minus, abs=1e-9)


@given(u=states, v=states)
@settings(max_examples=100, deadline=None)
def test_averaged_speed_matches_chord(u, v):
    fl = quartic()
    if abs(u - v) > 1e-6:
        assert averaged_speed(fl, u, v) == pytest.approx(
            shock_speed(fl, u, v), abs=1e-10)
    else:
        assert averaged_speed(fl, u, u) == pytest.approx(float(fl.d1(u)))


@pytest.mark.parametrize("model", [burgers(), quartic()])
def test_derivative_consistency(model):
    u = np.linspace(*model.domain_hint, 201)
    h = 1e-5
    fd1 = (model.eval(u + h) - model.eval(u - h)) / (2 * h)
    fd2 = (model.d1(u + h) - model.d1(u - h)) / (2 * h)
    assert np.max(np.abs(fd1 - model.d1(u))) < 1e-8
    assert np.max(np.abs(fd2 - model.d2(u))) < 1e-8
    if model.convex:
        assert np.all(model.d2(u) > 0)


def test_flux_by_name():
    assert flux_by_name("burgers").name == "burgers"
    assert flux_by_name("quartic").name == "quartic"
    with pytest.raises(KeyError):
        flux_by_name("cubic")


def test_sonic_point(fl):
    assert fl.sonic_point() == pytest.approx(0.0, abs=1e-12)
    shifted = FluxModel("shifted", lambda u: 0.5 * (np.asarray(u) - 9.0) ** 2,
                        lambda u: np.asarray(u) - 9.0,
                        lambda u: np.ones_like(np.asarray(u, float)), True)
    assert shifted.sonic_point() is None  # outside the domain hint


def test_inverse_on_incoming_branch(fl):
    # f(u) = u^2/2 on the decreasing branch u < 0
    u = inverse_on_incoming_branch(fl, 1.125, (-2.0, -1.0))
    assert u == pytest.approx(-1.5, abs=1e-10)
    with pytest.raises(NoBracket):
        inverse_on_incoming_branch(fl, 10.0, (-2.0, -1.0))
