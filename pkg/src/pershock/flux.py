"""Flux functions, shock algebra and admissibility predicates.

Everything downstream (Godunov solvers, wave constructions, the profile ODE)
talks to the flux only through :class:`FluxModel`.
"""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .errors import EqualStates, NoBracket, NotMonotone

STATE_TOL = 1e-12

# nodes/weights reused for every chord-speed quadrature
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


@dataclass(frozen=True)
class FluxModel:
    """A C^2 flux with derivatives and convexity metadata."""

    name: str
    eval: Callable[[np.ndarray], np.ndarray]
    d1: Callable[[np.ndarray], np.ndarray]
    d2: Callable[[np.ndarray], np.ndarray]
    convex: bool
    domain_hint: tuple = (-4.0, 4.0)

    def sonic_point(self):
        """State where f' vanishes inside domain_hint, or None."""
        a, b = self.domain_hint
        fa, fb = self.d1(a), self.d1(b)
        if fa == 0.0:
            return a
        if fb == 0.0:
            return b
        if fa * fb > 0:
            return None
        return brentq(self.d1, a, b, xtol=1e-14)


def burgers():
    return FluxModel(
        name="burgers",
        eval=lambda u: 0.5 * np.asarray(u) ** 2,
        d1=lambda u: np.asarray(u) * 1.0,
        d2=lambda u: np.ones_like(np.asarray(u, dtype=float)),
        convex=True,
    )


def quartic():
    """Convex non-quadratic flux u^2/2 + u^4/12."""
    u4 = lambda u: np.asarray(u, dtype=float)
    return FluxModel(
        name="quartic",
        eval=lambda u: 0.5 * u4(u) ** 2 + u4(u) ** 4 / 12.0,
        d1=lambda u: u4(u) + u4(u) ** 3 / 3.0,
        d2=lambda u: 1.0 + u4(u) ** 2,
        convex=True,
    )


_BUILTIN = {"burgers": burgers, "quartic": quartic}


def flux_by_name(name: str) -> FluxModel:
    try:
        return _BUILTIN[name]()
    except KeyError:
        raise KeyError(f"unknown flux {name!r}; available: {sorted(_BUILTIN)}") from None


@dataclass(frozen=True)
class ShockData:
    """A shock (u_minus, u_plus) together with its Rankine-Hugoniot speed."""

    u_minus: float
    u_plus: float
    speed: float

    @classmethod
    def from_states(cls, flux: FluxModel, u_minus: float, u_plus: float):
        return cls(u_minus, u_plus, shock_speed(flux, u_minus, u_plus))

    def jump(self):
        """[[u]] = u_plus - u_minus."""
        return self.u_plus - self.u_minus


def shock_speed(flux: FluxModel, u_minus: float, u_plus: float) -> float:
    """Rankine-Hugoniot speed (f(u+)-f(u-))/(u+-u-)."""
    if abs(u_minus - u_plus) < STATE_TOL:
        raise EqualStates(f"states coincide: {u_minus} vs {u_plus}")
    return float(
        (flux.eval(u_plus) - flux.eval(u_minus)) / (u_plus - u_minus)
    )


def check_lax(flux: FluxModel, shock: ShockData, tol: float = STATE_TOL) -> bool:
    """Strict Lax admissibility f'(u+) < s < f'(u-) with margin above tol."""
    s = shock.speed
    return bool(
        flux.d1(shock.u_plus) < s - tol and s + tol < flux.d1(shock.u_minus)
    )


def oleinik_f0(flux: FluxModel, shock: ShockData, phi) -> np.ndarray:
    """Chord defect f0(phi) = -s(phi-u+) + f(phi) - f(u+).

    Anchoring at u_minus gives the same value whenever R-H holds.
    """
    phi = np.asarray(phi, dtype=float)
    out = -shock.speed * (phi - shock.u_plus) + flux.eval(phi) - flux.eval(shock.u_plus)
    return out if out.ndim else float(out)


def averaged_speed(flux: FluxModel, u: float, v: float) -> float:
    """Chord-averaged characteristic speed  int_0^1 f'(v + theta (u-v)) dtheta.

    Gauss-Legendre 16 points; exact for the built-in polynomial fluxes.
    Equals the R-H speed for u != v and f'(u) for u == v.
    """
    theta = 0.5 * (_GL_NODES + 1.0)
    w = 0.5 * _GL_WEIGHTS
    return float(np.sum(w * flux.d1(v + theta * (u - v))))


def inverse_on_incoming_branch(
    flux: FluxModel, y: float, bracket: tuple, tol: float = 1e-12
) -> float:
    """Solve f(u) = y for u inside a bracket where f' < 0.

    Bisection bracketing followed by a Newton polish.
    """
    a, b = bracket
    # the branch must be monotone (f' of one sign) inside the bracket
    us = np.linspace(a, b, 64)
    d = flux.d1(us)
    if np.any(d >= 0.0) and np.any(d <= 0.0) and not np.all(d == 0.0):
        if np.any(d > 0.0) and np.any(d < 0.0):
            raise NotMonotone(f"f' changes sign inside bracket [{a}, {b}]")
    fa = float(flux.eval(a)) - y
    fb = float(flux.eval(b)) - y
    if fa * fb > 0:
        raise NoBracket(f"f(bracket) = [{fa + y:.6g}, {fb + y:.6g}] does not straddle {y:.6g}")
    u = brentq(lambda s: float(flux.eval(s)) - y, a, b, xtol=tol)
    # Newton polish (guarded: stay inside the bracket)
    for _ in range(3):
        du = (float(flux.eval(u)) - y) / float(flux.d1(u))
        if not np.isfinite(du):
            break
        un = u - du
        if un < min(a, b) or un > max(a, b):
            break
        u = un
    return float(u)
