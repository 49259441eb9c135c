"""Per-element control coefficients b_n."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .geometry import dot_rows
from .link import Scenario, path_phase

STRATEGIES = ("focusing", "beamforming", "uniform", "custom")


@dataclass(frozen=True, eq=False)
class CoefficientSet:
    values: NDArray[np.complex128]
    strategy: str = "custom"

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        object.__setattr__(self, "values", np.asarray(self.values, dtype=complex).ravel())

    def __len__(self) -> int:
        return self.values.shape[0]

    def rotated(self, theta: float) -> "CoefficientSet":
        "Apply a common phase rotation exp(j theta) to every coefficient."
        return CoefficientSet(self.values * np.exp(1j * theta), self.strategy)


def focusing(s: Scenario) -> CoefficientSet:
    """b_n = exp(-j phi_n): every path arrives in phase at the receiver.

    This is the path-loss-optimal phase-only control.
    """
    phi = path_phase(s.geometry, None, s.wavelength)
    return CoefficientSet(np.exp(-1j * phi), "focusing")


def beamforming(s: Scenario) -> CoefficientSet:
    """Direction-only control referenced to the RIS origin.

    b_n = exp(-j k p_n . r_inc) exp(+j k p_n . r_sca), where r_inc is the unit
    vector of propagation from the transmitter toward the RIS and r_sca points
    from the RIS toward the receiver. Distances are not used, so this matches
    focusing only when both terminals are far.
    """
    k = 2.0 * math.pi / s.wavelength
    r_inc = -s.tx.direction
    r_sca = s.rx.direction
    p = s.ris.positions
    return CoefficientSet(np.exp(-1j * k * dot_rows(p, r_inc)) * np.exp(1j * k * dot_rows(p, r_sca)), "beamforming")


def uniform(n: int | Scenario) -> CoefficientSet:
    "All b_n = 1."
    if isinstance(n, Scenario):
        n = n.ris.n_elements
    return CoefficientSet(np.ones(int(n), dtype=complex), "uniform")


def custom(values: ArrayLike, n: int | Scenario | None = None) -> CoefficientSet:
    "Wrap user-supplied coefficients, checking the count when ``n`` is given."
    cs = CoefficientSet(values, "custom")
    if isinstance(n, Scenario):
        n = n.ris.n_elements
    if n is not None and len(cs) != n:
        raise ValueError(f"expected {n} coefficients, got {len(cs)}")
    return cs


def for_strategy(name: str, s: Scenario) -> CoefficientSet:
    if name == "focusing":
        return focusing(s)
    if name == "beamforming":
        return beamforming(s)
    if name == "uniform":
        return uniform(s)
    raise ValueError(f"strategy {name!r} cannot be generated from a scenario")


def load_coefficients_csv(path: str | Path, n: int | Scenario | None = None) -> CoefficientSet:
    """Read coefficients from a two-column (real, imag) CSV.

    A non-numeric first row is treated as a header.
    """
    vals = []
    with open(path, newline="") as fh:
        for i, row in enumerate(csv.reader(fh)):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 2:
                raise ValueError(f"{path}:{i + 1}: expected 2 columns (real, imag), got {len(row)}")
            try:
                vals.append(complex(float(row[0]), float(row[1])))
            except ValueError:
                if i == 0 and not vals:
                    continue
                raise ValueError(f"{path}:{i + 1}: non-numeric value") from None
    return custom(vals, n)


def save_coefficients_csv(cs: CoefficientSet, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["real", "imag"])
        for v in cs.values:
            w.writerow([repr(float(v.real)), repr(float(v.imag))])
