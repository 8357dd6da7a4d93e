import numpy as np
import pytest

from pershock.errors import (CflViolation, DenominatorNearZero, DomainTooShort,
                             NoRoot)
from pershock.flux import ShockData
from pershock.profile import solve_profile
from pershock.signal import PeriodicSignal
from pershock.viscous import (Ansatz, ViscousConfig, WaveOnGrid, eo_flux,
                              initial_shift, one_sided_dx, run_coupled,
                              shift_rhs, solve_viscous)


def test_one_sided_dx_exact_for_cubics():
    dx = 0.1
    x = np.array([-0.3, -0.2, -0.1, 0.0])
    u = (x + 2.0) ** 3
    assert one_sided_dx(u, dx) == pytest.approx(3 * 4.0, abs=1e-10)


def test_eo_flux_properties(fl):
    sonic = 0.0
    a = np.linspace(-2, 2, 21)
    # consistency
    assert np.allclose(eo_flux(fl, a, a, sonic), fl.eval(a), atol=1e-14)
    # monotone: nondecreasing in the left state, nonincreasing in the right
    for b in (-1.0, 0.5):
        F = eo_flux(fl, a, b, sonic)
        assert np.all(np.diff(F) >= -1e-14)
        G = eo_flux(fl, b, a, sonic)
        assert np.all(np.diff(G) <= 1e-14)


def test_heat_limit_second_order(fl):
    L = 20.0
    errs = []
    for dx in (0.2, 0.1):
        cfg = ViscousConfig(x_left=-L, dx=dx, t_end=1.0, snapshot_interval=1.0,
                            dt=0.25 * dx)
        sol = solve_viscous(fl, lambda x: np.sin(np.pi * np.asarray(x) / L),
                            PeriodicSignal.constant(0.0), cfg,
                            left_value=0.0, advect=False)
        exact = np.exp(-(np.pi / L) ** 2) * np.sin(np.pi * sol.x / L)
        errs.append(np.max(np.abs(sol.states[-1] - exact)))
    order = np.log2(errs[0] / errs[1])
    assert 1.8 < order < 2.2


def test_cfl_guard(fl):
    cfg = ViscousConfig(x_left=-10.0, dx=0.05, t_end=1.0, dt=1.0)
    with pytest.raises(CflViolation):
        solve_viscous(fl, lambda x: np.full_like(np.asarray(x, float), -1.5),
                      PeriodicSignal.constant(-1.5), cfg)


@pytest.fixture(scope="module")
def stationary_profile(fl):
    return solve_profile(fl, ShockData.from_states(fl, 1.0, -1.0))


def test_stationary_viscous_shock(fl, stationary_profile):
    prof = stationary_profile
    cfg = ViscousConfig(x_left=-40.0, dx=0.05, t_end=5.0)
    sol = solve_viscous(fl, lambda x: prof(np.asarray(x) + 20.0),
                        PeriodicSignal.constant(-1.0), cfg)
    assert np.max(np.abs(sol.states[-1] - prof(sol.x + 20.0))) < 5e-3
    assert sol.conservation_residual < 1e-8


@pytest.fixture(scope="module")
def matched_setup(fl, profile_burgers):
    x = -60.0 + np.arange(1201) * 0.05
    wave = WaveOnGrid.constant(-1.5, x)
    return Ansatz(profile_burgers, wave), x


def test_initial_shift_pure_translation(matched_setup, profile_burgers):
    ansatz, x = matched_setup
    a = -20.0
    X0 = initial_shift(lambda xx: profile_burgers(np.asarray(xx) - a),
                       ansatz, x)
    assert X0 == pytest.approx(a, abs=1e-6)


def test_initial_shift_bump_mass(matched_setup, profile_burgers):
    ansatz, x = matched_setup
    a = -20.0
    m = 0.3 * np.sqrt(np.pi)

    def u0(xx):
        xx = np.asarray(xx, dtype=float)
        return profile_burgers(xx - a) + 0.3 * np.exp(-(xx + 45.0) ** 2)

    X0 = initial_shift(u0, ansatz, x)
    assert X0 == pytest.approx(a - m / profile_burgers.shock.jump(), abs=5e-3)


def test_initial_shift_no_root(matched_setup):
    ansatz, x = matched_setup
    with pytest.raises(NoRoot):
        initial_shift(lambda xx: np.full_like(np.asarray(xx, float), 0.5),
                      ansatz, x)


def test_shift_rhs_matched_state_vanishes(fl, matched_setup, profile_burgers):
    ansatz, x = matched_setup
    X = -20.0
    u = ansatz.u_sharp(x, 0.0, X)
    rhs = shift_rhs(fl, ansatz, x, 0.0, X, one_sided_dx(u, 0.05), -1.5)
    assert abs(rhs) < 1e-6


def test_shift_rhs_denominator_guard(fl, profile_burgers):
    x = -60.0 + np.arange(1201) * 0.05
    # wave pinned at u_minus: the blended jump degenerates
    ansatz = Ansatz(profile_burgers, WaveOnGrid.constant(0.5, x))
    with pytest.raises(DenominatorNearZero):
        shift_rhs(fl, ansatz, x, 0.0, -20.0, 0.0, -1.5)


def test_run_coupled_matched_constants(fl, matched_setup, profile_burgers):
    ansatz, x = matched_setup
    a = -20.0
    cfg = ViscousConfig(x_left=-60.0, dx=0.05, t_end=5.0)
    res = run_coupled(fl, lambda xx: profile_burgers(np.asarray(xx) - a),
                      PeriodicSignal.constant(-1.5), ansatz, cfg)
    assert res.shift.X0 == pytest.approx(a, abs=1e-6)
    assert abs(res.shift.X[-1] - a) < 0.01
    assert np.max(np.abs(res.shift.mass_defect)) < 1e-10
    # first-order advection smears the layer: gap grows at O(dx) scale
    assert np.max(res.gap_superposition) < 2e-2


def test_run_coupled_projection_restores_defect(fl, matched_setup,
                                                profile_burgers):
    ansatz, _ = matched_setup
    a = -20.0
    cfg = ViscousConfig(x_left=-60.0, dx=0.05, t_end=1.0)
    res = run_coupled(fl, lambda xx: profile_burgers(np.asarray(xx) - a),
                      PeriodicSignal.constant(-1.5), ansatz, cfg, X0=a + 1.0)
    # the mass constraint drives the displaced shift back to the true phase
    assert abs(res.shift.X[-1] - a) < 0.05
    assert abs(res.shift.mass_defect[-1]) < 1e-10


def test_run_coupled_resolution_guard(fl, matched_setup, profile_burgers):
    ansatz, _ = matched_setup
    cfg = ViscousConfig(x_left=-60.0, dx=0.2, t_end=1.0)
    with pytest.raises(CflViolation):
        run_coupled(fl, lambda xx: profile_burgers(np.asarray(xx) + 20.0),
                    PeriodicSignal.constant(-1.5), ansatz, cfg)


def test_run_coupled_domain_guard(fl, matched_setup, profile_burgers):
    ansatz, _ = matched_setup
    cfg = ViscousConfig(x_left=-60.0, dx=0.05, t_end=20.0)
    with pytest.raises(DomainTooShort):
        run_coupled(fl, lambda xx: profile_burgers(np.asarray(xx) + 50.0),
                    PeriodicSignal.constant(-1.5), ansatz, cfg, X0=-50.0)


def test_wave_on_grid_matches_spectral(visc_wave):
    x = -30.0 + np.arange(601) * 0.05
    wg = WaveOnGrid.from_spectral(visc_wave, x)
    for t in (0.0, 0.3, 0.77):
        assert np.max(np.abs(wg.u_plus(t) - visc_wave.eval_u(x, t))) < 1e-8
    assert wg.u_plus_bar == pytest.approx(visc_wave.u_plus_bar)
