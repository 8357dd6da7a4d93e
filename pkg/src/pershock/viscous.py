"""Semi-implicit viscous solver, the blended ansatz, the initial-shift
root-find, the shift ODE, and the coupled run that checks convergence to
the superposition of shifted profile and boundary wave."""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.linalg import solve_banded
from scipy.optimize import brentq

from .errors import (CflViolation, DenominatorNearZero, DomainTooShort,
                     NoRoot, ShiftDiverged)
from .flux import FluxModel, ShockData
from .profile import ShockProfileTable
from .signal import PeriodicSignal
from .spectral_wave import SpectralWave


@dataclass
class ViscousConfig:
    x_left: float
    dx: float
    t_end: float
    cfl: float = 0.5
    snapshot_interval: float = 1.0
    dt: Optional[float] = None  # override; must respect the CFL bound


def one_sided_dx(u: np.ndarray, dx: float) -> float:
    """Third-order biased stencil for du/dx at the right end."""
    return (11.0 * u[-1] - 18.0 * u[-2] + 9.0 * u[-3] - 2.0 * u[-4]) / (6.0 * dx)


def eo_flux(flux: FluxModel, a, b, sonic):
    """Engquist-Osher flux for a convex flux with minimum at sonic."""
    if sonic is None:
        return flux.eval(a) if np.all(flux.d1(a) >= 0) else flux.eval(b)
    fs = flux.eval(sonic)
    return flux.eval(np.maximum(a, sonic)) + flux.eval(np.minimum(b, sonic)) - fs


class _CrankNicolson:
    """Half-step diffusion solve on interior nodes with Dirichlet ends."""

    def __init__(self, n_interior: int, dx: float, dt_half: float):
        self.r = dt_half / (2.0 * dx * dx)  # trapezoidal: dt/2 on each side
        n = n_interior
        ab = np.zeros((3, n))
        ab[0, 1:] = -self.r
        ab[1, :] = 1.0 + 2.0 * self.r
        ab[2, :-1] = -self.r
        self.ab = ab

    def step(self, u, left_new, right_new):
        """u: full node array; returns updated full array."""
        r = self.r
        interior = u[1:-1]
        rhs = interior + r * (u[2:] - 2.0 * interior + u[:-2])
        rhs[0] += r * left_new
        rhs[-1] += r * right_new
        out = u.copy()
        out[1:-1] = solve_banded((1, 1), self.ab, rhs)
        out[0] = left_new
        out[-1] = right_new
        return out


@dataclass
class ViscousSolution:
    x: np.ndarray
    times: np.ndarray
    states: np.ndarray
    left_state: float
    conservation_residual: float  # max per-step defect of the discrete identity
    dx: float

    def interp(self, xq, i):
        return np.interp(xq, self.x, self.states[i])


def _pick_dt(flux, data_speed, cfg: ViscousConfig):
    limit = cfg.cfl * cfg.dx / data_speed if data_speed > 0 else np.inf
    if cfg.dt is not None:
        if cfg.dt > limit * (1 + 1e-12):
            raise CflViolation(f"dt={cfg.dt} exceeds advective limit {limit:.4g}")
        return cfg.dt
    return min(limit, cfg.snapshot_interval)


def solve_viscous(flux: FluxModel, u0: Callable, ub: PeriodicSignal,
                  cfg: ViscousConfig, left_value: Optional[float] = None,
                  advect: bool = True) -> ViscousSolution:
    """March the viscous IBVP: Strang split of Crank-Nicolson diffusion
    around explicit Engquist-Osher advection.  Dirichlet at both ends."""
    n = int(round(-cfg.x_left / cfg.dx))
    dx = cfg.dx
    x = cfg.x_left + np.arange(n + 1) * dx
    u = np.asarray(u0(x), dtype=float).copy()
    left = float(u0(cfg.x_left)) if left_value is None else float(left_value)
    u[0] = left
    u[-1] = float(ub(0.0))
    sonic = flux.sonic_point() if advect else None

    speed = max(np.max(np.abs(flux.d1(u))), np.max(np.abs(flux.d1(ub.samples))))
    dt = _pick_dt(flux, speed if advect else 0.0, cfg)
    cn = _CrankNicolson(n - 1, dx, dt / 2.0)

    t = 0.0
    next_snap = 0.0
    times, states = [], []
    residual = 0.0
    mass = np.trapezoid(u, x)

    while t < cfg.t_end - 1e-12:
        if t >= next_snap - 1e-9:
            times.append(t)
            states.append(u.copy())
            next_snap += cfg.snapshot_interval
        step = min(dt, cfg.t_end - t)
        if step < dt * (1 - 1e-12):
            cn_step = _CrankNicolson(n - 1, dx, step / 2.0)
        else:
            cn_step = cn
        flux_work = 0.0

        def diff_half(u, t_new):
            nonlocal flux_work
            ub_new = float(ub(t_new))
            out = cn_step.step(u, left, ub_new)
            # trapezoidal one-sided diffusive fluxes at both ends
            dr = 0.5 * ((u[-1] - u[-2]) + (out[-1] - out[-2])) / dx
            dl = 0.5 * ((u[1] - u[0]) + (out[1] - out[0])) / dx
            flux_work += (step / 2.0) * (dr - dl)
            # boundary node replacement is a mass source at trapezoid weight
            flux_work += 0.5 * dx * ((out[-1] - u[-1]) + (out[0] - u[0]))
            return out

        def adv_full(u, t_mid):
            nonlocal flux_work
            if not advect:
                return u
            F = eo_flux(flux, u[:-1], u[1:], sonic)
            out = u.copy()
            out[1:-1] -= (step / dx) * (F[1:] - F[:-1])
            flux_work += step * (F[0] - F[-1])
            return u if out is u else out

        u = diff_half(u, t + step / 2.0)
        u = adv_full(u, t + step / 2.0)
        u = diff_half(u, t + step)
        new_mass = np.trapezoid(u, x)
        residual = max(residual, abs(new_mass - mass - flux_work) / step)
        mass = new_mass
        t += step

    times.append(t)
    states.append(u.copy())
    return ViscousSolution(x, np.array(times), np.array(states), left,
                           residual, dx)


class WaveOnGrid:
    """Boundary wave resampled onto the solver nodes.

    Nodes left of the wave's own grid carry the far-field constant.
    """

    def __init__(self, x: np.ndarray, coeffs: np.ndarray, dcoeffs: np.ndarray,
                 mean: float, v0_inf: complex, period: float):
        self.x = x
        self.coeffs = coeffs
        self.dcoeffs = dcoeffs
        self.mean = mean
        self.v0_inf = v0_inf
        self.period = period
        self.u_plus_bar = float(mean + np.real(v0_inf))
        self.K = coeffs.shape[0] - 1

    @classmethod
    def from_spectral(cls, wave: SpectralWave, x: np.ndarray):
        K = wave.K
        dco = np.gradient(wave.coeffs, wave.x, axis=1, edge_order=2)
        coeffs = np.zeros((K + 1, x.size), dtype=complex)
        dcoeffs = np.zeros((K + 1, x.size), dtype=complex)
        inside = x >= wave.x[0]
        for k in range(K + 1):
            coeffs[k, inside] = (np.interp(x[inside], wave.x, wave.coeffs[k].real)
                                 + 1j * np.interp(x[inside], wave.x, wave.coeffs[k].imag))
            dcoeffs[k, inside] = (np.interp(x[inside], wave.x, dco[k].real)
                                  + 1j * np.interp(x[inside], wave.x, dco[k].imag))
        coeffs[0, ~inside] = wave.v0_inf
        return cls(x, coeffs, dcoeffs, wave.ub.mean, wave.v0_inf, wave.ub.period)

    @classmethod
    def constant(cls, u_plus: float, x: np.ndarray, period: float = 1.0):
        coeffs = np.zeros((1, x.size), dtype=complex)
        return cls(x, coeffs, coeffs.copy(), u_plus, 0.0 + 0.0j, period)

    def _phases(self, t):
        om = 2.0 * np.pi / self.period
        return np.exp(1j * om * np.arange(1, self.K + 1) * t)

    def u_plus(self, t: float):
        ph = self._phases(t)
        return self.mean + self.coeffs[0].real + 2.0 * np.real(ph @ self.coeffs[1:])

    def du_plus_dx(self, t: float):
        ph = self._phases(t)
        return self.dcoeffs[0].real + 2.0 * np.real(ph @ self.dcoeffs[1:])


@dataclass
class Ansatz:
    """Blend u_sharp = u_minus (1 - sigma_X) + u_plus sigma_X."""

    profile: ShockProfileTable
    wave: WaveOnGrid

    def sigma_pair(self, x, t, X):
        """(sigma, sigma') at the shifted argument."""
        xi = x - self.profile.shock.speed * t - X
        phi = self.profile(xi)
        sig = (phi - self.profile.shock.u_minus) / self.profile.shock.jump()
        dsig = self.profile.derivative(xi) / self.profile.shock.jump()
        return phi, sig, dsig

    def u_sharp(self, x, t, X):
        _, sig, _ = self.sigma_pair(x, t, X)
        up = self.wave.u_plus(t)
        return self.profile.shock.u_minus * (1.0 - sig) + up * sig

    def superposition(self, x, t, X):
        """phi_X + u_plus - u_plus_bar (the asymptotic linear state)."""
        xi = x - self.profile.shock.speed * t - X
        return self.profile(xi) + self.wave.u_plus(t) - self.wave.u_plus_bar


def initial_shift(u0: Callable, ansatz: Ansatz, x: np.ndarray,
                  margin: float = 2.0, tol: float = 1e-12) -> float:
    """Root of X0 -> int (u0 - phi(x-X0) - (u_plus(x,0) - u_plus_bar) sigma(x-X0)).

    The map is strictly monotone, so plain bracketing applies.
    """
    u0v = np.asarray(u0(x), dtype=float)
    up0 = ansatz.wave.u_plus(0.0)
    upb = ansatz.wave.u_plus_bar

    def defect(X0):
        phi = ansatz.profile(x - X0)
        sig = (phi - ansatz.profile.shock.u_minus) / ansatz.profile.shock.jump()
        return np.trapezoid(u0v - phi - (up0 - upb) * sig, x)

    a, b = x[0] + margin, -margin
    fa, fb = defect(a), defect(b)
    if fa * fb > 0:
        raise NoRoot(f"defect({a:.3g})={fa:.3g}, defect({b:.3g})={fb:.3g}")
    return float(brentq(defect, a, b, xtol=tol))


def shift_rhs(flux: FluxModel, ansatz: Ansatz, x: np.ndarray, t: float,
              X: float, dudx0: float, ub_value: float) -> float:
    """Right-hand side of the phase-shift equation.

    dudx0 is the one-sided trace of du/dx at x = 0 from the PDE solution.
    """
    shock = ansatz.profile.shock
    s = shock.speed
    upb = ansatz.wave.u_plus_bar
    phi, sig, dsig = ansatz.sigma_pair(x, t, X)
    up = ansatz.wave.u_plus(t)
    dup = ansatz.wave.du_plus_dx(t)

    denom = np.trapezoid((up - shock.u_minus) * dsig, x)
    ref = shock.jump() * (sig[-1] - sig[0])
    if abs(denom) < 0.5 * abs(ref):
        raise DenominatorNearZero(
            f"denominator {denom:.4g} below half the unperturbed value {ref:.4g}")

    f = flux.eval
    dusharp0 = (up[-1] - shock.u_minus) * dsig[-1] + dup[-1] * sig[-1]
    g1 = float(f(upb) - f(phi[-1])) - dudx0 + dusharp0
    g2 = float(np.trapezoid(
        (-(up - upb) * s + f(up) - f(upb) - dup) * dsig, x))
    g3 = float((f(ub_value) - f(upb)) * (1.0 - sig[-1])
               - (ub_value - upb) * dsig[-1])
    return (g1 + g2 + g3) / denom


@dataclass
class ShiftState:
    times: np.ndarray
    X: np.ndarray
    dXdt: np.ndarray
    mass_defect: np.ndarray

    @property
    def X0(self):
        return float(self.X[0])


@dataclass
class CoupledResult:
    solution: ViscousSolution
    shift: ShiftState
    snapshot_defect: np.ndarray
    gap_superposition: np.ndarray   # sup |u - (phi_X + u_plus - u_plus_bar)|
    gap_ansatz: np.ndarray          # sup |u - u_sharp|
    gap_two_ansatz: np.ndarray      # sup |u_sharp - superposition|
    U_boundary: np.ndarray          # anti-derivative value at x = 0 per snapshot

    def antiderivative(self, i, ansatz: Ansatz):
        sol = self.solution
        t = sol.times[i]
        X = np.interp(t, self.shift.times, self.shift.X)
        diff = sol.states[i] - ansatz.u_sharp(sol.x, t, X)
        from scipy.integrate import cumulative_trapezoid
        return cumulative_trapezoid(diff, sol.x, initial=0.0)


def run_coupled(flux: FluxModel, u0: Callable, ub: PeriodicSignal,
                ansatz: Ansatz, cfg: ViscousConfig,
                X0: Optional[float] = None, edge_margin: float = 5.0,
                project_mass: bool = True) -> CoupledResult:
    """Co-integrate the viscous PDE with the shift ODE (Heun at midpoints).

    The phase ODE is evaluated in its grouped continuum form; the shift is
    then projected back onto the defining constraint int (u - u_sharp) = 0
    by a Newton step (the discrete flux balance drifts from the continuum
    one at scheme order, and the projection removes that drift).
    """
    shock = ansatz.profile.shock
    if cfg.dx * 20.0 * ansatz.profile.theta_s > 1.05:
        raise CflViolation(
            f"dx={cfg.dx} does not resolve the transition width 1/theta_s")
    n = int(round(-cfg.x_left / cfg.dx))
    dx = cfg.dx
    x = cfg.x_left + np.arange(n + 1) * dx
    u = np.asarray(u0(x), dtype=float).copy()
    u[0] = shock.u_minus
    u[-1] = float(ub(0.0))
    if X0 is None:
        X0 = initial_shift(u0, ansatz, x)
    X = float(X0)
    sonic = flux.sonic_point()

    speed = max(np.max(np.abs(flux.d1(u))), np.max(np.abs(flux.d1(ub.samples))))
    dt = _pick_dt(flux, speed, cfg)
    cn = _CrankNicolson(n - 1, dx, dt / 4.0)  # diffusion advanced in dt/2 halves

    t = 0.0
    next_snap = 0.0
    st_t, st_X, st_dX, st_defect = [], [], [], []
    times, states = [], []
    defects, gaps_sup, gaps_ans, gaps_two, U0s = [], [], [], [], []
    residual = 0.0

    def half_pde(u, t_start):
        out = cn.step(u, shock.u_minus, float(ub(t_start + dt / 4.0)))
        F = eo_flux(flux, out[:-1], out[1:], sonic)
        adv = out.copy()
        adv[1:-1] -= (dt / 2.0 / dx) * (F[1:] - F[:-1])
        adv = cn.step(adv, shock.u_minus, float(ub(t_start + dt / 2.0)))
        return adv

    def record_snapshot(t, u, X):
        times.append(t)
        states.append(u.copy())
        usharp = ansatz.u_sharp(x, t, X)
        sup = ansatz.superposition(x, t, X)
        diff = u - usharp
        defects.append(np.trapezoid(diff, x))
        gaps_sup.append(np.max(np.abs(u - sup)))
        gaps_ans.append(np.max(np.abs(diff)))
        gaps_two.append(np.max(np.abs(usharp - sup)))
        from scipy.integrate import cumulative_trapezoid
        U = cumulative_trapezoid(diff, x, initial=0.0)
        U0s.append(U[-1])

    while t < cfg.t_end - 1e-12:
        if t >= next_snap - 1e-9:
            record_snapshot(t, u, X)
            next_snap += cfg.snapshot_interval
        u_half = half_pde(u, t)
        t_mid = t + dt / 2.0
        dudx0 = one_sided_dx(u_half, dx)
        ubv = float(ub(t_mid))
        r1 = shift_rhs(flux, ansatz, x, t_mid, X, dudx0, ubv)
        r2 = shift_rhs(flux, ansatz, x, t_mid, X + dt * r1, dudx0, ubv)
        X_prev = X
        X += dt * 0.5 * (r1 + r2)
        u = half_pde(u_half, t_mid)
        t += dt
        if project_mass:
            for _ in range(2):
                _, _, dsig = ansatz.sigma_pair(x, t, X)
                up = ansatz.wave.u_plus(t)
                D = np.trapezoid((up - shock.u_minus) * dsig, x)
                d = np.trapezoid(u - ansatz.u_sharp(x, t, X), x)
                X -= d / D
        dX = (X - X_prev) / dt

        xs = shock.speed * t + X
        if not (cfg.x_left + edge_margin < xs < -0.0):
            if xs <= cfg.x_left + edge_margin:
                raise DomainTooShort(f"shock at {xs:.3g} near x_left at t={t:.4g}")
            raise ShiftDiverged(f"shock location {xs:.3g} left the domain")
        st_t.append(t)
        st_X.append(X)
        st_dX.append(dX)
        st_defect.append(np.trapezoid(u - ansatz.u_sharp(x, t, X), x))

    record_snapshot(t, u, X)
    sol = ViscousSolution(x, np.array(times), np.array(states),
                          shock.u_minus, residual, dx)
    shift = ShiftState(np.array(st_t), np.array(st_X), np.array(st_dX),
                       np.array(st_defect))
    return CoupledResult(sol, shift, np.array(defects), np.array(gaps_sup),
                         np.array(gaps_ans), np.array(gaps_two), np.array(U0s))
