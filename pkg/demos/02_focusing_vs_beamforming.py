"""Focusing against beamforming on one link.

A 40 x 40 surface at lambda/2 spacing sits 30 wavelengths from both terminals.
Focusing aligns every element path at the receiver. Beamforming only uses the
two directions, so it loses gain once the phasefront curvature across the
aperture becomes significant. Moving the terminals away shrinks the gap.
"""

import math

import numpy as np

from ris_pathloss import Scenario, TerminalPlacement, beamforming, build_square_grid, focusing, path_loss, uniform
from ris_pathloss.link import free_space_loss, to_db

lam = 0.01  # 30 GHz, roughly
ris = build_square_grid(40, 40, lam / 2)

for r_lam in (30, 300, 3000):
    s = Scenario(
        wavelength=lam,
        ris=ris,
        tx=TerminalPlacement.polar(r_lam * lam, math.radians(20)),
        rx=TerminalPlacement.polar(r_lam * lam, math.radians(50), azimuth=math.pi),
    )
    fs = to_db(free_space_loss(2 * r_lam * lam, lam))
    line = [f"r = {r_lam:5d} lambda"]
    for name, b in (("focusing", focusing(s)), ("beamforming", beamforming(s)), ("uniform", uniform(s))):
        line.append(f"{name} {fs + path_loss(s, b).gain_db:7.2f} dB")
    print("  ".join(line), " (relative to free space over r_i + r_s)")

# Random phases never beat focusing.
s = Scenario(wavelength=lam, ris=build_square_grid(8, 8, lam / 2),
             tx=TerminalPlacement.polar(0.5, 0.3), rx=TerminalPlacement.polar(0.4, 0.9, 1.0))
rng = np.random.default_rng(1)
best = path_loss(s, focusing(s)).inverse_loss
draws = [path_loss(s, np.exp(1j * rng.uniform(0, 2 * np.pi, 64))).inverse_loss for _ in range(1000)]
print(f"best of 1000 random phase draws is {to_db(best / max(draws)):.2f} dB below focusing")
