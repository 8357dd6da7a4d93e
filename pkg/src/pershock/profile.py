"""Traveling-wave profile of the viscous shock and its blending weight.

The profile solves phi' = f0(phi) with phi(0) fixed at the midpoint of the
two states; the tails are continued analytically once the state is within
the stiffness handoff of its limit.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DegenerateShock, OleinikViolated
from .flux import FluxModel, ShockData, check_lax, oleinik_f0

TAIL_HANDOFF = 1e-8


@dataclass
class ShockProfileTable:
    """Tabulated profile phi, derivative, weight sigma and tail metadata."""

    xi: np.ndarray
    phi: np.ndarray
    dphi: np.ndarray
    sigma: np.ndarray
    shock: ShockData
    flux: FluxModel
    rate_left: float    # linearized rate f'(u_minus) - s  (> 0)
    rate_right: float   # linearized rate f'(u_plus) - s   (< 0)
    amp_left: float     # phi - u_minus ~ -amp_left * exp(rate_left * xi)
    amp_right: float    # phi - u_plus  ~  amp_right * exp(rate_right * xi)

    @property
    def theta_s(self):
        """Slower of the two exponential tail rates."""
        return min(self.rate_left, -self.rate_right)

    def __call__(self, xi):
        """phi evaluated anywhere, analytic tails beyond the table."""
        from scipy.interpolate import PchipInterpolator
        if not hasattr(self, "_interp"):
            object.__setattr__(self, "_interp", PchipInterpolator(self.xi, self.phi))
        xi = np.asarray(xi, dtype=float)
        out = self._interp(np.clip(xi, self.xi[0], self.xi[-1]))
        left = xi < self.xi[0]
        right = xi > self.xi[-1]
        if np.any(left):
            out = np.where(left, self.shock.u_minus
                           - self.amp_left * np.exp(self.rate_left * (xi - 0.0)), out)
        if np.any(right):
            out = np.where(right, self.shock.u_plus
                           + self.amp_right * np.exp(self.rate_right * xi), out)
        return out if out.ndim else float(out)

    def derivative(self, xi):
        """phi' = f0(phi), valid including the analytic tails."""
        return oleinik_f0(self.flux, self.shock, self(xi))

    def weight(self, xi):
        """sigma = (phi - u_minus) / (u_plus - u_minus), in [0, 1]."""
        return (self(xi) - self.shock.u_minus) / self.shock.jump()

    def weight_derivative(self, xi):
        return self.derivative(xi) / self.shock.jump()

    def sigma_from_flux(self):
        """Second expression for sigma: (f(phi)-f(u-)-phi') / (f(u+)-f(u-))."""
        f = self.flux.eval
        num = f(self.phi) - f(self.shock.u_minus) - self.dphi
        den = f(self.shock.u_plus) - f(self.shock.u_minus)
        return num / den


def _geometric_grid(xi_max: float, n: int = 1500, stretch: float = 3.0):
    """Nodes on (0, xi_max] clustered near 0."""
    u = np.linspace(0.0, 1.0, n + 1)[1:]
    return xi_max * (np.expm1(stretch * u)) / np.expm1(stretch)


def solve_profile(flux: FluxModel, shock: ShockData, xi_max: float = None,
                  tol: float = 1e-12) -> ShockProfileTable:
    """Integrate the profile ODE out from xi = 0 on both sides."""
    um, up = shock.u_minus, shock.u_plus
    if not check_lax(flux, shock, tol=1e-10):
        raise DegenerateShock(
            f"shock ({um}, {up}) is degenerate or reversed: f'(u+-) vs s")
    interior = np.linspace(up, um, 513)[1:-1]
    f0_vals = oleinik_f0(flux, shock, interior)
    if np.any(f0_vals >= 0.0):
        raise OleinikViolated("f0 has a non-negative value strictly between the states")

    rate_left = float(flux.d1(um) - shock.speed)
    rate_right = float(flux.d1(up) - shock.speed)
    theta = min(rate_left, -rate_right)
    if xi_max is None:
        xi_max = 60.0 / theta

    def rhs(_, phi):
        return oleinik_f0(flux, shock, phi)

    phi0 = 0.5 * (um + up)

    def run(direction):
        # direction +1: xi > 0 toward u_plus; -1: xi < 0 toward u_minus
        target = up if direction > 0 else um

        def close(_, phi):
            return abs(phi[0] - target) - TAIL_HANDOFF
        close.terminal = True
        grid = _geometric_grid(xi_max)
        sol = solve_ivp(rhs, (0.0, direction * xi_max), [phi0],
                        method="DOP853", rtol=tol, atol=tol * 1e-2,
                        dense_output=True, events=close, max_step=1.0)
        if sol.t_events[0].size:
            xi_h = float(sol.t_events[0][0])
        else:
            xi_h = float(sol.t[-1])
        xi = direction * grid
        vals = np.empty_like(xi)
        inside = np.abs(xi) <= abs(xi_h)
        vals[inside] = sol.sol(xi[inside])[0]
        # linearized continuation beyond the handoff point
        phi_h = float(sol.sol(xi_h)[0])
        rate = rate_right if direction > 0 else rate_left
        vals[~inside] = target + (phi_h - target) * np.exp(
            rate * (xi[~inside] - xi_h))
        amp = (phi_h - target) * np.exp(-rate * xi_h)
        return xi, vals, amp

    xi_r, phi_r, amp_right = run(+1)
    xi_l, phi_l, amp_left = run(-1)
    xi = np.concatenate((xi_l[::-1], [0.0], xi_r))
    phi = np.concatenate((phi_l[::-1], [phi0], phi_r))
    dphi = oleinik_f0(flux, shock, phi)
    sigma = (phi - um) / shock.jump()
    return ShockProfileTable(xi, phi, dphi, sigma, shock, flux,
                             rate_left, rate_right,
                             float(-amp_left), float(amp_right))


def tail_rates(table: ShockProfileTable):
    """Fitted exponential tail rates over the outer quarter of each side.

    Returns ((theta_left, theta_right), (predicted_left, predicted_right))
    with all four rates positive.
    """
    um, up = table.shock.u_minus, table.shock.u_plus
    out = []
    for sign, target in ((-1, um), (+1, up)):
        side = table.xi < 0 if sign < 0 else table.xi > 0
        xi = table.xi[side]
        gap = np.abs(table.phi[side] - target)
        # outer quarter of the resolvable tail (gap must stay above roundoff)
        ok = (gap > 1e-13) & (gap < 1e-3)
        lim = 0.75 * np.abs(xi[ok]).max()
        sel = ok & (np.abs(xi) > lim)
        if sel.sum() < 5:
            sel = ok
        slope = np.polyfit(xi[sel], np.log(gap[sel]), 1)[0]
        out.append(abs(float(slope)))
    theta_left, theta_right = out
    return (theta_left, theta_right), (table.rate_left, -table.rate_right)
