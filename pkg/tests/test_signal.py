import numpy as np
import pytest

from pershock.signal import PeriodicSignal


def test_constant():
    s = PeriodicSignal.constant(-1.5, period=2.0)
    assert s.period == 2.0
    assert s.mean == pytest.approx(-1.5)
    assert s(0.37) == pytest.approx(-1.5)


def test_sinusoid_values():
    s = PeriodicSignal.sinusoid(-1.5, 0.3, 1.0)
    t = np.array([0.0, 0.25, 0.5, 0.75])
    expect = -1.5 + 0.3 * np.sin(2 * np.pi * t)
    assert np.allclose(s(t), expect, atol=1e-12)
    assert s.mean == pytest.approx(-1.5, abs=1e-12)


def test_periodicity():
    s = PeriodicSignal.sinusoid(-1.5, 0.3, 0.7)
    t = np.linspace(0, 0.7, 17)
    assert np.allclose(s(t), s(t + 0.7), atol=1e-10)
    assert np.allclose(s(t), s(t - 3 * 0.7), atol=1e-10)


def test_reconstruction_error_bandlimited():
    s = PeriodicSignal.sinusoid(-1.5, 0.3, 1.0)
    assert s.reconstruction_error() < 1e-12


def test_coefficients_sinusoid():
    s = PeriodicSignal.sinusoid(0.0, 1.0, 1.0)
    c = s.coefficients()
    # sin(2 pi t) = (e^{i..} - e^{-i..}) / 2i  ->  c_1 = -i/2
    assert c[0] == pytest.approx(0.0, abs=1e-12)
    assert c[1] == pytest.approx(-0.5j, abs=1e-12)
    assert np.max(np.abs(c[2:])) < 1e-12


def test_shifted():
    s = PeriodicSignal.sinusoid(-1.5, 0.3, 1.0)
    sh = s.shifted(0.3)
    t = np.linspace(0, 1, 11)
    assert np.allclose(sh(t), s(t + 0.3), atol=1e-10)


def test_from_callable_general():
    fn = lambda t: -1.5 + 0.1 * np.sin(2 * np.pi * t) + 0.05 * np.cos(6 * np.pi * t)
    s = PeriodicSignal.from_callable(fn, 1.0)
    assert s.reconstruction_error() < 1e-12
    assert s(0.123) == pytest.approx(fn(0.123), abs=1e-10)
