"""Link power equation and path loss of the RIS-enabled SISO channel.

Every element contributes one transmitter -> element -> receiver path whose
power follows the plate-scattering law (proportional to 1 / (r_i^2 r_s^2)).
The received signal is the coherent sum of those paths weighted by the
control coefficients b_n.

Sums over elements are taken in row-major element order with ``math.fsum``
applied separately to real and imaginary parts, so results are correctly
rounded and bit-reproducible regardless of how the caller parallelises.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .geometry import LinkGeometry, RisArray, TerminalPlacement, link_geometry
from .pattern import ElementPattern, gain

if TYPE_CHECKING:
    from .coeffs import CoefficientSet


class PassivityWarning(UserWarning):
    "Coefficient magnitudes imply amplification by a nominally passive RIS."


def to_db(x: float) -> float:
    "10 log10(x), with -inf for zero."
    return 10.0 * math.log10(x) if x > 0 else -math.inf


@dataclass(frozen=True, eq=False)
class Scenario:
    """Complete input to a path-loss evaluation.

    ``tx_gain`` and ``rx_gain`` are scalars: terminal gains are taken as
    constant over the RIS. ``efficiency`` above 1 needs ``active=True``.
    """

    wavelength: float
    ris: RisArray
    tx: TerminalPlacement
    rx: TerminalPlacement
    pattern: ElementPattern = field(default_factory=ElementPattern)
    tx_power: float = 1.0
    tx_gain: float = 1.0
    rx_gain: float = 1.0
    efficiency: float = 1.0
    active: bool = False

    def __post_init__(self):
        if not self.wavelength > 0:
            raise ValueError(f"wavelength must be positive, got {self.wavelength}")
        if not self.tx_power > 0:
            raise ValueError(f"tx_power must be positive, got {self.tx_power}")
        if self.tx_gain < 0 or self.rx_gain < 0:
            raise ValueError("terminal gains must be non-negative")
        if not self.efficiency > 0:
            raise ValueError(f"efficiency must be positive, got {self.efficiency}")
        if self.efficiency > 1 and not self.active:
            raise ValueError(
                f"efficiency {self.efficiency} > 1 requires active=True (passive RIS has efficiency <= 1)"
            )

    @property
    def passive(self) -> bool:
        return self.efficiency <= 1.0

    @cached_property
    def geometry(self) -> LinkGeometry:
        return link_geometry(self.ris, self.tx, self.rx)

    def swapped(self) -> "Scenario":
        "Same scenario with transmitter and receiver exchanged."
        return Scenario(
            wavelength=self.wavelength,
            ris=self.ris,
            tx=self.rx,
            rx=self.tx,
            pattern=self.pattern,
            tx_power=self.tx_power,
            tx_gain=self.rx_gain,
            rx_gain=self.tx_gain,
            efficiency=self.efficiency,
            active=self.active,
        )


@dataclass(frozen=True, eq=False)
class PathLossResult:
    """Outcome of one evaluation.

    ``inverse_loss`` is the path gain L^-1. ``coherent_sum`` is the complex
    sum inside the magnitude; its units depend on which routine produced it
    (sqrt(W) for :func:`receive_power`, 1/m^2 for :func:`path_loss`).
    """

    inverse_loss: float
    coherent_sum: complex
    received_power: Optional[float] = None
    element_power: Optional[NDArray[np.float64]] = None
    element_phase: Optional[NDArray[np.float64]] = None

    @property
    def loss_db(self) -> float:
        return -to_db(self.inverse_loss)

    @property
    def gain_db(self) -> float:
        return to_db(self.inverse_loss)


def path_phase(geom: LinkGeometry, n: Optional[int], wavelength: float):
    """Propagation phase 2*pi*(r_i + r_s)/lambda, unreduced.

    ``n=None`` returns the array for all elements.
    """
    if n is None:
        return 2.0 * np.pi * (geom.r_i + geom.r_s) / wavelength
    return 2.0 * math.pi * (float(geom.r_i[n]) + float(geom.r_s[n])) / wavelength


def element_received_power(s: Scenario, geom: Optional[LinkGeometry] = None, n: Optional[int] = None):
    """Power P_R,n delivered to the receiver via element ``n`` alone, in W.

    ``n=None`` returns all elements as an array.
    """
    geom = s.geometry if geom is None else geom
    idx = slice(None) if n is None else n
    g_i = gain(s.pattern, geom.u_i[idx])
    g_s = gain(s.pattern, geom.u_s[idx])
    p = (
        s.tx_power * s.tx_gain * s.rx_gain
        * (s.wavelength / (4.0 * math.pi)) ** 4
        * g_i * g_s * s.efficiency
        / (geom.r_i[idx] ** 2 * geom.r_s[idx] ** 2)
    )
    return float(p) if n is not None else p


def coherent_sum(terms: ArrayLike) -> complex:
    "Correctly rounded sum of complex terms (fixed order, compensated)."
    terms = np.asarray(terms, dtype=complex)
    return complex(math.fsum(terms.real.tolist()), math.fsum(terms.imag.tolist()))


def _coefficients(s: Scenario, b) -> NDArray[np.complex128]:
    values = np.asarray(getattr(b, "values", b), dtype=complex).ravel()
    n = s.ris.n_elements
    if values.shape[0] != n:
        raise ValueError(f"expected {n} coefficients, got {values.shape[0]}")
    if np.any(s.efficiency * np.abs(values) ** 2 > 1.0 + 1e-12) and not s.active:
        warnings.warn(
            "efficiency * |b_n|^2 exceeds 1: coefficients amplify on a passive RIS",
            PassivityWarning,
            stacklevel=3,
        )
    return values


def receive_power(s: Scenario, b: "CoefficientSet | ArrayLike") -> PathLossResult:
    """Total received power |sum_n b_n sqrt(P_R,n) exp(j phi_n)|^2 in W."""
    values = _coefficients(s, b)
    geom = s.geometry
    p_n = element_received_power(s, geom)
    phi = path_phase(geom, None, s.wavelength)
    y = coherent_sum(values * np.sqrt(p_n) * np.exp(1j * phi))
    p_r = abs(y) ** 2
    return PathLossResult(
        inverse_loss=p_r / (s.tx_power * s.tx_gain * s.rx_gain),
        coherent_sum=y,
        received_power=p_r,
        element_power=p_n,
        element_phase=phi,
    )


def path_loss(s: Scenario, b: "CoefficientSet | ArrayLike") -> PathLossResult:
    """Path gain L^-1 of the RIS channel, independent of terminal characteristics.

    ``received_power`` is filled in as P_T G_T G_R L^-1.
    """
    values = _coefficients(s, b)
    geom = s.geometry
    amp = np.sqrt(gain(s.pattern, geom.u_i) * gain(s.pattern, geom.u_s)) / (geom.r_i * geom.r_s)
    phi = path_phase(geom, None, s.wavelength)
    y = coherent_sum(values * amp * np.exp(1j * phi))
    inv = (s.wavelength / (4.0 * math.pi)) ** 4 * abs(y) ** 2 * s.efficiency
    return PathLossResult(
        inverse_loss=inv,
        coherent_sum=y,
        received_power=s.tx_power * s.tx_gain * s.rx_gain * inv,
        element_phase=phi,
    )


def path_loss_dot_product(s: Scenario, b: "CoefficientSet | ArrayLike") -> PathLossResult:
    """Same path gain, factored with the pattern normalisation pulled out of the sum.

    L^-1 = (lambda/4pi)^4 gamma^2 |sum b_n sqrt(u_i^2q u_s^2q / (r_i^2 r_s^2)) e^{j phi_n}|^2 eps.
    With gamma = pi this is the familiar lambda^4 / (256 pi^2) prefactor.
    """
    values = _coefficients(s, b)
    geom = s.geometry
    q = s.pattern.q
    amp = np.sqrt(geom.u_i ** (2 * q) * geom.u_s ** (2 * q) / (geom.r_i**2 * geom.r_s**2))
    phi = path_phase(geom, None, s.wavelength)
    y = coherent_sum(values * amp * np.exp(1j * phi))
    inv = (s.wavelength / (4.0 * math.pi)) ** 4 * s.pattern.gamma**2 * abs(y) ** 2 * s.efficiency
    return PathLossResult(inverse_loss=inv, coherent_sum=y, element_phase=phi)


def free_space_loss(path_length: float, wavelength: float) -> float:
    "Friis free-space loss (4 pi d / lambda)^2 for a direct path of length d."
    if not path_length > 0 or not wavelength > 0:
        raise ValueError("path_length and wavelength must be positive")
    return (4.0 * math.pi * path_length / wavelength) ** 2
