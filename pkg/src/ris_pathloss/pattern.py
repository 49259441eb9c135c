"""Generic cos^(2q) element radiation pattern.

The element gain is ``gamma * cos(psi)**(2q)`` over the front half-space and
zero behind it, with ``gamma = 2(2q + 1)`` so that the gain integrates to 4*pi
over the sphere. Callers pass ``u = cos(psi)`` directly, usually obtained as
a dot product with the RIS normal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike
from scipy import integrate

from .errors import ModelDomainError

#: Benchmark exponent. Broadside effective apertures at lambda/2 spacing sum to
#: the physical RIS area (gamma = 3.14, within 0.05% of pi).
Q0 = 0.285


@dataclass(frozen=True)
class ElementPattern:
    q: float = Q0

    def __post_init__(self):
        if not self.q >= 0:
            raise ModelDomainError(f"pattern exponent q must be >= 0, got {self.q}")

    @property
    def gamma(self) -> float:
        return 2.0 * (2.0 * self.q + 1.0)

    @property
    def broadside_gain(self) -> float:
        return self.gamma

    @property
    def broadside_gain_dbi(self) -> float:
        return 10.0 * math.log10(self.gamma)


def benchmark_pattern() -> ElementPattern:
    return ElementPattern(Q0)


def pattern_from_broadside_gain(g0: float) -> ElementPattern:
    """Pattern whose broadside gain (linear) is ``g0``; requires ``g0 >= 2``."""
    if not g0 >= 2.0:
        raise ModelDomainError(f"broadside gain {g0} is below 2 (q would be negative)")
    return ElementPattern(g0 / 4.0 - 0.5)


def pattern_from_broadside_gain_dbi(g0_dbi: float) -> ElementPattern:
    return pattern_from_broadside_gain(10.0 ** (g0_dbi / 10.0))


def gain(p: ElementPattern, cos_psi: ArrayLike):
    """Element gain for ``cos_psi = r_hat . n_hat``.

    Returns 0 for ``cos_psi <= 0``. Scalar in, float out; array in, array out.
    """
    u = np.asarray(cos_psi, dtype=float)
    if np.any(np.abs(u) > 1.0 + 1e-12):
        raise ValueError("cos_psi must lie in [-1, 1]")
    up = np.clip(u, 0.0, 1.0)
    g = np.where(u > 0, p.gamma * up ** (2.0 * p.q), 0.0)
    return float(g) if g.ndim == 0 else g


def effective_aperture(p: ElementPattern, cos_psi: ArrayLike, wavelength: float):
    "Capture area (lambda^2 / 4 pi) * G_e in m^2."
    if not wavelength > 0:
        raise ValueError(f"wavelength must be positive, got {wavelength}")
    return wavelength**2 / (4.0 * math.pi) * gain(p, cos_psi)


def radiated_power_integral(p: ElementPattern) -> float:
    """Integral of the gain over the full sphere, in steradians.

    Should be 4*pi for every member of the family; used as a self-check.
    """
    val, _ = integrate.quad(
        lambda psi: p.gamma * math.cos(psi) ** (2.0 * p.q) * math.sin(psi),
        0.0,
        math.pi / 2,
        epsabs=0.0,
        epsrel=1e-9,
        limit=200,
    )
    return 2.0 * math.pi * val
