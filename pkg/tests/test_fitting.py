import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pershock.errors import NonMonotoneErrors
from pershock.fitting import (binned_loglog_fit, loglog_fit, observed_orders,
                              semilog_fit)


def test_loglog_recovers_power_law():
    x = np.geomspace(1, 100, 20)
    fit = loglog_fit(x, 3.0 * x ** -1.5)
    assert fit.slope == pytest.approx(-1.5, abs=1e-10)
    assert fit.intercept == pytest.approx(np.log(3.0), abs=1e-10)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)
    assert fit.n_points == 20


def test_semilog_recovers_exponential():
    t = np.linspace(0, 10, 30)
    fit = semilog_fit(t, 2.0 * np.exp(-0.7 * t))
    assert fit.slope == pytest.approx(-0.7, abs=1e-10)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("fn", [loglog_fit, semilog_fit])
def test_too_few_points_rejected(fn):
    with pytest.raises(ValueError):
        fn([1, 2, 3, 4], [1, 1, 1, 1])


def test_binned_fit_sees_through_oscillation():
    t = np.arange(20.0, 101.0)
    y = t ** -0.5 * (1.0 + 0.8 * np.sin(5.234 * t))
    raw = loglog_fit(t, np.abs(y))
    binned = binned_loglog_fit(t, y)
    assert abs(binned.slope + 0.5) < 0.15
    assert abs(binned.slope + 0.5) <= abs(raw.slope + 0.5) + 0.05


@given(st.floats(0.5, 3.0))
@settings(max_examples=20, deadline=None)
def test_observed_orders_synthetic(p):
    dxs = 0.1 / 2.0 ** np.arange(4)
    errors = 2.0 * dxs ** p
    orders = observed_orders(dxs, errors)
    assert np.allclose(orders, p, atol=1e-10)


def test_observed_orders_non_monotone():
    with pytest.raises(NonMonotoneErrors):
        observed_orders([0.1, 0.05, 0.025], [1.0, 0.5, 0.6])
