"""Interpolation windows for the nonuniform FFT.

Two window families are provided: the Kaiser-Bessel window, whose spectrum
decays extremely fast beyond its cutoff, and the rectangular window, whose
spectrum is the slowly decaying sinc (used by truncated-sinc interpolation).

All evaluations are vectorized over numpy arrays and work in scaled space
(``i0e`` plus explicit exponentials) so that large shape parameters do not
overflow.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import i0e

__all__ = ["KaiserBesselWindow", "RectWindow"]


@dataclass(frozen=True)
class KaiserBesselWindow:
    """Kaiser-Bessel window with support half-width ``alpha`` and spectral
    cutoff ``cutoff`` (the interpolation length of the nonuniform FFT)."""

    alpha: float
    cutoff: float

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.cutoff <= 0:
            raise ValueError("cutoff must be positive")

    @property
    def support_half_width(self) -> float:
        return self.alpha

    def evaluate(self, theta):
        """I0(cutoff*sqrt(alpha^2 - theta^2)) / I0(alpha*cutoff) inside
        [-alpha, alpha], zero outside."""
        theta = np.asarray(theta, dtype=float)
        a, k = self.alpha, self.cutoff
        inside = np.abs(theta) <= a
        s = np.sqrt(np.where(inside, a * a - theta * theta, 0.0))
        z = k * s
        # I0(z)/I0(a*k) = i0e(z) * exp(z - a*k) / i0e(a*k); z <= a*k so the
        # exponent never overflows.
        val = i0e(z) * np.exp(z - a * k) / i0e(a * k)
        out = np.where(inside, val, 0.0)
        return out if out.ndim else float(out)

    def spectrum(self, omega):
        """Fourier transform of the window.

        Hyperbolic form below the cutoff, 2*alpha/I0(alpha*cutoff) at the
        cutoff, and the real analytic continuation (sin form) above it.
        """
        omega = np.asarray(omega, dtype=float)
        a, k = self.alpha, self.cutoff
        scale = 1.0 / i0e(a * k)  # = exp(a*k) / I0(a*k)
        d = k * k - omega * omega
        s = np.sqrt(np.abs(d))
        tiny = s * a < 1e-8
        s_safe = np.where(tiny, 1.0, s)
        s_below = np.where(d > 0, s_safe, 0.0)  # keep exponents <= 0
        # |omega| < k: 2*sinh(a*s)/s, scaled by exp(-a*k)
        below = (np.exp(a * s_below - a * k) - np.exp(-a * s_below - a * k)) / s_safe
        # |omega| > k: 2*sin(a*s)/s, scaled by exp(-a*k)
        above = 2.0 * np.sin(a * s_safe) * np.exp(-a * k) / s_safe
        # near |omega| = k both branches tend to 2*a*exp(-a*k)
        at = 2.0 * a * np.exp(-a * k)
        out = scale * np.where(tiny, at, np.where(d > 0, below, above))
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class RectWindow:
    """Characteristic function of [-half_width, half_width]."""

    half_width: float

    def __post_init__(self):
        if self.half_width < np.pi:
            raise ValueError("half_width must be at least pi")

    @property
    def support_half_width(self) -> float:
        return self.half_width

    def evaluate(self, theta):
        theta = np.asarray(theta, dtype=float)
        out = np.where(np.abs(theta) <= self.half_width, 1.0, 0.0)
        return out if out.ndim else float(out)

    def spectrum(self, omega):
        """2*sin(h*omega)/omega, continued by 2*h at omega = 0."""
        omega = np.asarray(omega, dtype=float)
        h = self.half_width
        small = np.abs(omega) * h < 1e-9
        om = np.where(small, 1.0, omega)
        out = np.where(small, 2.0 * h, 2.0 * np.sin(h * om) / om)
        return out if out.ndim else float(out)
