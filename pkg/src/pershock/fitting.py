"""Least-squares rate fitting and refinement-order estimation."""

from dataclasses import dataclass

import numpy as np

from .errors import NonMonotoneErrors


@dataclass
class RateFit:
    abscissae: np.ndarray
    ordinates: np.ndarray
    slope: float
    intercept: float
    r_squared: float

    @property
    def n_points(self):
        return len(self.abscissae)


def _fit(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < 5:
        raise ValueError(f"rate fit needs at least 5 points, got {x.size}")
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid ** 2)) / ss_tot if ss_tot > 0 else 1.0
    return RateFit(x, y, float(slope), float(intercept), r2)


def loglog_fit(x, y, floor: float = 1e-300) -> RateFit:
    """Fit log y against log x (power-law rate)."""
    x = np.abs(np.asarray(x, dtype=float))
    y = np.maximum(np.asarray(y, dtype=float), floor)
    return _fit(np.log(x), np.log(y))


def semilog_fit(t, y, floor: float = 1e-300) -> RateFit:
    """Fit log y against t (exponential rate)."""
    y = np.maximum(np.asarray(y, dtype=float), floor)
    return _fit(np.asarray(t, dtype=float), np.log(y))


def binned_loglog_fit(t, y, n_bins: int = 5) -> RateFit:
    """Power-law fit on geometric-bin means.

    Oscillatory signals sampled at aliasing rates produce spurious flat
    fits; averaging |y| within geometric bins recovers the envelope rate.
    """
    t = np.asarray(t, dtype=float)
    y = np.abs(np.asarray(y, dtype=float))
    edges = np.geomspace(t.min(), t.max() * (1 + 1e-9), n_bins + 1)
    bt, by = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        m = (t >= a) & (t < b)
        if m.any():
            bt.append(np.exp(np.log(t[m]).mean()))
            by.append(y[m].mean())
    return _fit(np.log(np.array(bt)), np.log(np.maximum(np.array(by), 1e-300)))


def observed_orders(dxs, errors) -> np.ndarray:
    """Refinement order between consecutive levels."""
    dxs = np.asarray(dxs, dtype=float)
    errors = np.asarray(errors, dtype=float)
    if len(dxs) < 2:
        raise ValueError("need at least 2 (dx, error) pairs")
    if np.any(np.diff(errors) >= 0):
        raise NonMonotoneErrors(
            f"errors do not decrease under refinement: {errors.tolist()}")
    return np.log(errors[:-1] / errors[1:]) / np.log(dxs[:-1] / dxs[1:])
