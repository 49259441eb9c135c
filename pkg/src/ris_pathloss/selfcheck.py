"""Quick numerical self-checks, run by ``ris-pathloss validate``.

Each check is small enough to finish in well under a second. The per-element
oracle rebuilds received power step by step (incident density, captured
power, re-radiated density) without the consolidated link equation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import farfield, link
from .coeffs import custom, focusing
from .geometry import TerminalPlacement, build_square_grid
from .pattern import ElementPattern, radiated_power_integral


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def _element_gain(q: float, u: float) -> float:
    if u <= 0:
        return 0.0
    return 2 * (2 * q + 1) * min(u, 1.0) ** (2 * q)


def chained_received_power(s: link.Scenario, b) -> float:
    "Received power from the unconsolidated per-element chain, element by element."
    lam = s.wavelength
    y = 0j
    for n, p in enumerate(s.ris.positions):
        to_tx = s.tx.position - p
        to_rx = s.rx.position - p
        r_i = math.sqrt(to_tx[0] * to_tx[0] + to_tx[1] * to_tx[1] + to_tx[2] * to_tx[2])
        r_s = math.sqrt(to_rx[0] * to_rx[0] + to_rx[1] * to_rx[1] + to_rx[2] * to_rx[2])
        g_in = _element_gain(s.pattern.q, float(np.dot(to_tx, s.ris.normal)) / r_i)
        g_out = _element_gain(s.pattern.q, float(np.dot(to_rx, s.ris.normal)) / r_s)
        density_in = s.tx_power * s.tx_gain / (4 * math.pi * r_i**2)
        captured = density_in * lam**2 / (4 * math.pi) * g_in
        reradiated = s.efficiency * captured
        density_out = reradiated * g_out / (4 * math.pi * r_s**2)
        p_rn = density_out * lam**2 / (4 * math.pi) * s.rx_gain
        phase = 2 * math.pi * (r_i + r_s) / lam
        y += complex(b[n]) * math.sqrt(p_rn) * cmath.exp(1j * phase)
    return abs(y) ** 2


def _random_scenario(rng: np.random.Generator) -> link.Scenario:
    lam = rng.uniform(0.01, 1.0)
    rows, cols = rng.integers(1, 6, size=2)
    return link.Scenario(
        wavelength=lam,
        ris=build_square_grid(int(rows), int(cols), lam * rng.uniform(0.2, 1.0)),
        tx=TerminalPlacement.polar(lam * rng.uniform(5, 500), rng.uniform(0, 1.4), rng.uniform(0, 2 * np.pi)),
        rx=TerminalPlacement.polar(lam * rng.uniform(5, 500), rng.uniform(0, 1.4), rng.uniform(0, 2 * np.pi)),
        pattern=ElementPattern(rng.uniform(0, 3)),
        tx_power=rng.uniform(0.1, 10),
        tx_gain=rng.uniform(0.5, 5),
        rx_gain=rng.uniform(0.5, 5),
        efficiency=rng.uniform(0.1, 1.0),
    )


def check_power_conservation() -> CheckResult:
    worst = max(
        abs(radiated_power_integral(ElementPattern(q)) / (4 * math.pi) - 1) for q in (0.0, 0.285, 1.5, 4.0)
    )
    return CheckResult("power conservation", worst < 1e-6, f"max rel err {worst:.2e}")


def check_plate_identity(rng) -> CheckResult:
    worst = 0.0
    for _ in range(200):
        a, r_i, r_s = rng.uniform(0.01, 100), rng.uniform(1, 1e4), rng.uniform(1, 1e4)
        x = farfield.far_path_loss_area(a, r_i, r_s, 1.0, 1.0, efficiency=1.0)
        y = farfield.plate_path_loss(a, r_i, r_s)
        worst = max(worst, abs(x / y - 1))
    return CheckResult("plate identity", worst <= 1e-14, f"max rel err {worst:.2e}")


def check_oracle(rng) -> CheckResult:
    worst = 0.0
    for _ in range(50):
        s = _random_scenario(rng)
        n = s.ris.n_elements
        b = custom(np.exp(1j * rng.uniform(0, 2 * np.pi, n)))
        got = link.path_loss(s, b).inverse_loss * s.tx_power * s.tx_gain * s.rx_gain
        ref = chained_received_power(s, b.values)
        worst = max(worst, abs(got / ref - 1))
    return CheckResult("per-element oracle", worst < 1e-12, f"max rel err {worst:.2e}")


def check_reciprocity(rng) -> CheckResult:
    worst = 0.0
    for _ in range(50):
        s = _random_scenario(rng)
        b = focusing(s)
        worst = max(worst, abs(link.path_loss(s.swapped(), b).inverse_loss / link.path_loss(s, b).inverse_loss - 1))
    return CheckResult("reciprocity", worst < 1e-12, f"max rel err {worst:.2e}")


def check_sizing_rule(rng) -> CheckResult:
    worst = 0.0
    for _ in range(200):
        r_i, r_s = rng.uniform(10, 1e4, size=2)
        lam = rng.uniform(1e-3, 1.0)
        u_i, u_s, eps = rng.uniform(0.05, 1.0, size=3)
        a = farfield.required_area(farfield.effective_focal_length(r_i, r_s), lam, u_i, u_s, eps)
        fs = farfield.FarScenario(r_i, r_s, lam, u_i, u_s, eps, area=a)
        worst = max(worst, abs(farfield.specular_ratio(fs) - 1))
    return CheckResult("sizing rule", worst < 1e-12, f"max rel err {worst:.2e}")


def run_all(seed: int = 20200101) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    return [
        check_power_conservation(),
        check_plate_identity(rng),
        check_oracle(rng),
        check_reciprocity(rng),
        check_sizing_rule(rng),
    ]
