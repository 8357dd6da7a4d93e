"""Time-periodic boundary data as samples plus Fourier coefficients."""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class PeriodicSignal:
    """One period of boundary data on a uniform grid.

    samples[j] = u_b(j * T / n_samples).  Coefficients follow the convention
    u_b(t) = sum_k  c_k exp(i 2 pi k t / T) and are truncated at |k| <= n_modes.
    """

    period: float
    samples: np.ndarray
    n_modes: int = 128

    @classmethod
    def from_callable(cls, fn: Callable, period: float, n_samples: int = 1024,
                      n_modes: int = 128):
        t = np.arange(n_samples) * (period / n_samples)
        return cls(period, np.asarray(fn(t), dtype=float), n_modes)

    @classmethod
    def constant(cls, value: float, period: float = 1.0, n_samples: int = 1024):
        return cls(period, np.full(n_samples, float(value)))

    @classmethod
    def sinusoid(cls, mean: float, amplitude: float, period: float,
                 n_samples: int = 1024):
        return cls.from_callable(
            lambda t: mean + amplitude * np.sin(2 * np.pi * t / period),
            period, n_samples)

    @property
    def n_samples(self):
        return self.samples.size

    @property
    def mean(self):
        return float(self.samples.mean())

    def coefficients(self):
        """Positive-frequency half-spectrum c_0 .. c_K (c_{-k} = conj c_k)."""
        k = min(self.n_modes, self.n_samples // 2 - 1)
        return np.fft.rfft(self.samples)[: k + 1] / self.n_samples

    def __call__(self, t):
        """Band-limited (trigonometric) reconstruction at arbitrary times."""
        t = np.asarray(t, dtype=float)
        c = self.coefficients()
        k = np.arange(1, c.size)
        phase = np.exp(2j * np.pi * np.multiply.outer(t, k) / self.period)
        out = c[0].real + 2.0 * np.real(phase @ c[1:])
        return out if out.ndim else float(out)

    def shifted(self, tau: float):
        """The signal t -> u_b(t + tau), resampled on the same grid."""
        t = np.arange(self.n_samples) * (self.period / self.n_samples)
        return PeriodicSignal(self.period, np.asarray(self(t + tau), dtype=float),
                              self.n_modes)

    def reconstruction_error(self):
        """Sup gap between samples and the truncated Fourier reconstruction."""
        t = np.arange(self.n_samples) * (self.period / self.n_samples)
        return float(np.max(np.abs(self(t) - self.samples)))
