"""Normalised path gain against aperture side at three distances.

Runs a reduced version of the shipped sweep files (every 5 wavelengths rather
than every half wavelength) and prints the broadside curves. Close to the
surface focusing keeps gaining with size, while beamforming levels off near
the specular benchmark.
"""

from dataclasses import replace
from importlib import resources

from ris_pathloss.config import load_scenario
from ris_pathloss.experiments import run_sweep

data = resources.files("ris_pathloss") / "data"
for name in ("sweep_r1e4", "sweep_r1e3", "sweep_r10"):
    spec = load_scenario(data / f"{name}.yaml")
    spec = replace(spec, side_lambda=tuple(float(s) for s in range(10, 101, 15)), psi_s_deg=(0.0,))
    rows = run_sweep(spec, workers=4)
    print(f"r = {spec.r_lambda[0]:g} lambda")
    print("  side   focusing  beamforming      far")
    for i in range(0, len(rows), 3):
        f, b, far = rows[i : i + 3]
        print(f"  {f.side_lambda:4.0f} {f.normalized_db:10.2f} {b.normalized_db:12.2f} {far.normalized_db:8.2f}")
