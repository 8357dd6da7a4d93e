"""Tour of the time-periodic boundary wave, inviscid and viscous.

Shows the 1/|x| decay of the inviscid wave, the exponential decay of the
viscous wave, and the quadratic far-field correction in the amplitude.
"""

import numpy as np

from pershock.flux import burgers
from pershock.inviscid_wave import solve_wave
from pershock.signal import PeriodicSignal
from pershock.spectral_wave import decay_check, solve_periodic_wave


def main():
    fl = burgers()

    print("== inviscid wave, amplitude 0.3 ==")
    wave = solve_wave(fl, PeriodicSignal.sinusoid(-1.5, 0.3, 1.0))
    print(f"far-field state: {wave.u_plus_bar:.6f}")
    for x in (-5.0, -10.0, -20.0, -40.0, -80.0):
        d = wave.sup_deviation(x, n_t=32)
        print(f"  sup_t |u+ - far field| at x = {x:6.1f}:  {d:.5f}"
              f"   (x * dev = {abs(x) * d:.3f})")

    print("\n== viscous wave, amplitude 0.05 ==")
    for amp in (0.05, 0.025):
        vw = solve_periodic_wave(fl, PeriodicSignal.sinusoid(-1.5, amp, 1.0))
        corr = vw.u_plus_bar + 1.5
        print(f"  amplitude {amp}: far-field correction = {corr:.3e}")
    dc = decay_check(vw)
    print(f"  fitted mode-1 decay rate {dc['mode1_rate']:.4f}"
          f" vs linearized {dc['re_r_plus_1']:.4f}")


if __name__ == "__main__":
    main()
