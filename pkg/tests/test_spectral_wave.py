import numpy as np
import pytest

from pershock.errors import NonIncomingMean, NotContracting
from pershock.signal import PeriodicSignal
from pershock.spectral_wave import (boundary_amplitude, contraction_ratio,
                                    decay_check, eigenvalues,
                                    solve_periodic_wave)


def test_eigenvalue_residuals(fl):
    for k in (1, 2, 5, 16):
        e = eigenvalues(fl, -1.5, 1.0, k)
        assert e.residual() < 1e-10
        assert np.real(e.r_plus) > 0 > np.real(e.r_minus)


def test_eigenvalues_reject_outgoing_mean(fl):
    with pytest.raises(NonIncomingMean):
        eigenvalues(fl, 0.2, 1.0, 1)


def test_boundary_values_match_datum(visc_wave, ub_sin005):
    n_t = visc_wave.n_t
    t = np.arange(n_t) * (1.0 / n_t)
    bv = visc_wave.boundary_values()
    assert np.max(np.abs(visc_wave.ub.mean + bv - ub_sin005(t))) < 1e-8


def test_contraction(visc_wave):
    assert contraction_ratio(visc_wave) < 0.5
    assert visc_wave.history[-1] < 1e-10


def test_decay_rate_matches_linearization(visc_wave):
    dc = decay_check(visc_wave)
    assert dc["mode1_rate"] == pytest.approx(dc["re_r_plus_1"], rel=0.10)
    assert visc_wave.theta_b == pytest.approx(0.5 * dc["re_r_plus_1"])


def test_far_field_quadratic_in_amplitude(fl, visc_wave, ub_sin005):
    half = PeriodicSignal.sinusoid(-1.5, 0.025, 1.0)
    w_half = solve_periodic_wave(fl, half)
    r = (visc_wave.u_plus_bar + 1.5) / (w_half.u_plus_bar + 1.5)
    assert r == pytest.approx(4.0, abs=1.0)


def test_far_field_reached(visc_wave):
    # oscillatory energy must be gone deep inside the domain
    energy = visc_wave.mode_energy()
    deep = visc_wave.x < visc_wave.x[0] * 0.75
    assert np.max(energy[deep]) < 1e-9


def test_zero_amplitude_is_constant(fl):
    wave = solve_periodic_wave(fl, PeriodicSignal.constant(-1.5))
    assert wave.u_plus_bar == pytest.approx(-1.5, abs=1e-12)
    assert np.max(np.abs(wave.coeffs[1:])) == 0.0


def test_large_amplitude_rejected(fl):
    with pytest.raises(NotContracting):
        solve_periodic_wave(fl, PeriodicSignal.sinusoid(-1.5, 0.3, 1.0))


def test_boundary_amplitude_h1():
    ub = PeriodicSignal.sinusoid(0.0, 1.0, 1.0)
    # H1 norm of sin(2 pi t): sqrt((1 + 4 pi^2) / 2) ... times sqrt(2)*|c1|
    expect = np.sqrt((1.0 + 4 * np.pi ** 2) * 0.5)
    assert boundary_amplitude(ub) == pytest.approx(expect, rel=1e-10)


def test_eval_u_periodicity(visc_wave):
    xq = np.array([-3.0, -1.0, -0.2])
    assert np.allclose(visc_wave.eval_u(xq, 0.3),
                       visc_wave.eval_u(xq, 1.3), atol=1e-12)
