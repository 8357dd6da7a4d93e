"""Predict, then measure, the asymptotic shock shift under a periodically
forced boundary.

A shock with left state 0.5 meets boundary data -1.5 + 0.3 sin(2 pi t).
The closed-form limit of X(t) - s t is compared against the tracked shock
of a Godunov run.
"""

import numpy as np

from pershock.flux import ShockData, burgers
from pershock.inviscid import (InviscidConfig, predicted_final_shift,
                               refine_trajectory_by_mass, solve_inviscid,
                               track_shock)
from pershock.inviscid_wave import solve_wave
from pershock.signal import PeriodicSignal


def main():
    fl = burgers()
    ub = PeriodicSignal.sinusoid(-1.5, 0.3, 1.0)
    wave = solve_wave(fl, ub)
    shock = ShockData.from_states(fl, 0.5, wave.u_plus_bar)
    print(f"far-field state u_plus_bar = {wave.u_plus_bar:.6f}")
    print(f"shock speed s              = {shock.speed:.6f}")

    def u0(x):
        x = np.asarray(x)
        return 0.5 + 0.4 * ((x >= -2.0) & (x <= -1.0))

    cfg = InviscidConfig(x_left=-70.0, dx=0.02, t_end=100.0)
    pred = predicted_final_shift(fl, u0, ub, shock, cfg.x_left)
    print(f"predicted final shift      = {pred:.6f}")

    sol = solve_inviscid(fl, u0, ub, cfg)
    traj = track_shock(sol, shock)
    times = np.arange(3.0, cfg.t_end + 0.5, 1.0)
    refined = refine_trajectory_by_mass(sol, traj, shock, wave, times)
    rel = refined.relative(shock.speed)
    print(f"measured  X(100) - 100 s   = {rel[-1]:.6f}")
    print(f"difference                 = {abs(rel[-1] - pred):.2e}")
    for t in (10, 25, 50, 100):
        i = int(np.argmin(np.abs(refined.times - t)))
        print(f"  t = {refined.times[i]:5.1f}:  X - st = {rel[i]: .5f}"
              f"   gap to limit = {abs(rel[i] - pred):.4f}")


if __name__ == "__main__":
    main()
