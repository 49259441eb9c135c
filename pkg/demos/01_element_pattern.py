"""Element pattern and effective aperture.

The element gain is gamma * cos(psi)^(2q) on the front half-space. Its
normalisation gamma = 2(2q + 1) makes the total radiated power 4 pi for any q.
The benchmark exponent q0 = 0.285 gives about 5 dBi broadside, and with lambda/2
spacing the summed broadside apertures match the physical area.
"""

import math

import numpy as np

from ris_pathloss.pattern import ElementPattern, Q0, effective_aperture, gain, radiated_power_integral

lam = 0.1
for q in (0.0, Q0, 1.5):
    p = ElementPattern(q)
    print(f"q = {q:5.3f}  gamma = {p.gamma:5.3f}  broadside {p.broadside_gain_dbi:5.2f} dBi  "
          f"radiated / 4pi = {radiated_power_integral(p) / (4 * math.pi):.9f}")

# Gain against angle off broadside. Nothing is radiated behind the surface.
p = ElementPattern()
psi = np.radians([0, 30, 60, 75, 89, 95])
for d, g in zip(np.degrees(psi), gain(p, np.cos(psi))):
    print(f"  psi {d:5.1f} deg  G = {g:.4f}")

# One element at lambda/2 spacing occupies (lambda/2)^2; its broadside aperture is gamma/pi of that.
a_e = effective_aperture(p, 1.0, lam)
print(f"A_e(broadside) / (lambda/2)^2 = {a_e / (lam / 2) ** 2:.5f}  (gamma / pi = {p.gamma / math.pi:.5f})")
