"""Closed forms for a RIS that is far from both terminals.

"Far" means element distances and directions are taken as common constants
(r_i, u_i) and (r_s, u_s) across the surface; path phases stay exact, so the
coherent sum still enters through ``coherent_sum_sq``.

The closed forms here use the analytic normalisation gamma = pi, for which
lambda/2 spacing makes the summed broadside apertures equal the physical area
exactly. The numeric benchmark q0 = 0.285 gives gamma = 3.14, a 0.004 dB
offset in path gain; pass ``gamma`` explicitly to match it.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

from .errors import ModelDomainError
from .pattern import Q0

SPEED_OF_LIGHT = 299792458.0


def wavelength_from_frequency(f_hz: float) -> float:
    return SPEED_OF_LIGHT / f_hz


@dataclass(frozen=True)
class FarScenario:
    """Far-case link description.

    Give ``n_elements`` (lambda/2 spacing implied) and/or ``area``; if both
    are set they must satisfy ``area == n_elements * (wavelength/2)**2``.
    """

    r_i: float
    r_s: float
    wavelength: float
    u_i: float = 1.0
    u_s: float = 1.0
    efficiency: float = 1.0
    q: float = Q0
    n_elements: Optional[int] = None
    area: Optional[float] = None

    def __post_init__(self):
        if not (self.r_i > 0 and self.r_s > 0 and self.wavelength > 0):
            raise ValueError("distances and wavelength must be positive")
        for name in ("u_i", "u_s"):
            u = getattr(self, name)
            if not 0 < u <= 1:
                raise ValueError(f"{name} must lie in (0, 1], got {u}")
        if self.n_elements is not None and self.area is not None:
            expect = self.n_elements * (self.wavelength / 2) ** 2
            if abs(self.area - expect) > 1e-12 * expect:
                raise ValueError(f"area {self.area} inconsistent with N(lambda/2)^2 = {expect}")

    @property
    def N(self) -> int:
        if self.n_elements is None:
            raise ValueError("element count not specified")
        return self.n_elements

    @property
    def A(self) -> float:
        if self.area is not None:
            return self.area
        if self.n_elements is not None:
            return self.n_elements * (self.wavelength / 2) ** 2
        raise ValueError("neither area nor element count specified")

    @property
    def pattern_factor(self) -> float:
        "u_i^(2q) u_s^(2q)"
        return self.u_i ** (2 * self.q) * self.u_s ** (2 * self.q)


def far_path_loss_general(fs: FarScenario, coherent_sum_sq: float, gamma: float = math.pi) -> float:
    """Far-case path gain for arbitrary coefficients.

    ``coherent_sum_sq`` is |sum_n b_n exp(j phi_n)|^2 (at most N^2 for unit
    modulus b). The r_i^-2 r_s^-2 range law holds whatever the coefficients.
    """
    return (
        (fs.wavelength / (4 * math.pi)) ** 4 * gamma**2
        * fs.pattern_factor * coherent_sum_sq * fs.efficiency
        / (fs.r_i**2 * fs.r_s**2)
    )


def far_path_loss_focused(fs: FarScenario, gamma: float = math.pi) -> float:
    "Far-case path gain with phase-only focusing: the N^2 law."
    return far_path_loss_general(fs, float(fs.N) ** 2, gamma)


def far_path_loss_area(
    area: float,
    r_i: float,
    r_s: float,
    u_i: float = 1.0,
    u_s: float = 1.0,
    q: float = Q0,
    efficiency: float = 1.0,
) -> float:
    """Focused far-case path gain in terms of physical area only.

    (A / (4 pi r_i r_s))^2 u_i^2q u_s^2q eps; frequency does not appear.
    """
    if not area > 0:
        raise ValueError(f"area must be positive, got {area}")
    return (area / (4 * math.pi * (r_i * r_s))) ** 2 * u_i ** (2 * q) * u_s ** (2 * q) * efficiency


def plate_rcs(area: float, wavelength: float) -> float:
    "Broadside monostatic RCS of a flat conducting plate, 4 pi A^2 / lambda^2."
    if not (area > 0 and wavelength > 0):
        raise ValueError("area and wavelength must be positive")
    return 4 * math.pi * area**2 / wavelength**2


def plate_path_loss(area: float, r_i: float, r_s: float) -> float:
    "Path gain of the broadside flat-plate channel, (A / (4 pi r_i r_s))^2."
    if not area > 0:
        raise ValueError(f"area must be positive, got {area}")
    return (area / (4 * math.pi * (r_i * r_s))) ** 2


def radar_range_power(
    tx_power: float, tx_gain: float, rx_gain: float, wavelength: float, rcs: float, r_i: float, r_s: float
) -> float:
    "Bistatic radar range equation P_T G_T G_R lambda^2 sigma / ((4 pi)^3 r_i^2 r_s^2)."
    return tx_power * tx_gain * rx_gain * wavelength**2 * rcs / ((4 * math.pi) ** 3 * r_i**2 * r_s**2)


def effective_focal_length(r_i: float, r_s: float) -> float:
    """Thin-lens combination r_i r_s / (r_i + r_s).

    An infinite distance is allowed for one leg and gives the other.
    """
    if not (r_i > 0 and r_s > 0):
        raise ValueError("distances must be positive")
    if math.isinf(r_i) and math.isinf(r_s):
        return math.inf
    if math.isinf(r_i):
        return r_s
    if math.isinf(r_s):
        return r_i
    return r_i * r_s / (r_i + r_s)


def specular_ratio(fs: FarScenario) -> float:
    """L_S / L_RIS: how much the focused RIS beats a free-space path of length r_i + r_s.

    Equal to (A / (f_e lambda))^2 u_i^2q u_s^2q eps.
    """
    f_e = effective_focal_length(fs.r_i, fs.r_s)
    return (fs.A / (f_e * fs.wavelength)) ** 2 * fs.pattern_factor * fs.efficiency


def required_area(
    f_e: float,
    wavelength: float,
    u_i: float = 1.0,
    u_s: float = 1.0,
    efficiency: float = 1.0,
    q: float = Q0,
) -> float:
    """RIS area for which the far-case path loss equals the specular benchmark.

    A = f_e lambda / sqrt(u_i^2q u_s^2q eps). Side length is ``sqrt(A)``.
    """
    if not wavelength > 0:
        raise ValueError("wavelength must be positive")
    if not (0 < efficiency <= 1):
        raise ValueError(f"efficiency must lie in (0, 1], got {efficiency}")
    for name, u in (("u_i", u_i), ("u_s", u_s)):
        if u <= 0:
            raise ModelDomainError(f"{name} = {u}: an edge-on RIS cannot match free space")
        if u > 1:
            raise ValueError(f"{name} must be <= 1, got {u}")
    if f_e < 0:
        raise ValueError("f_e must be non-negative")
    if f_e == 0:
        warnings.warn("f_e = 0 gives a degenerate zero-area RIS", RuntimeWarning, stacklevel=2)
        return 0.0
    return f_e * wavelength / math.sqrt(u_i ** (2 * q) * u_s ** (2 * q) * efficiency)


def required_side(f_e: float, wavelength: float, **kw) -> tuple[float, float]:
    "(side in metres, side in wavelengths) of the square RIS from :func:`required_area`."
    side = math.sqrt(required_area(f_e, wavelength, **kw))
    return side, side / wavelength
