"""Aperture-size sweeps and the RIS sizing tables.

A sweep holds the transmitter on broadside and moves the receiver to each
off-broadside angle psi_s at the same distance r (r_i = r_s = r). For each
square aperture side it evaluates the exact focusing and beamforming path
gains and the far-case closed form, normalised to a free-space path of
length r_i + r_s.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .coeffs import beamforming, focusing
from .errors import ResourceCapError
from .farfield import (
    SPEED_OF_LIGHT,
    FarScenario,
    far_path_loss_focused,
    required_side,
)
from .geometry import TerminalPlacement, build_square_grid
from .link import Scenario, free_space_loss, path_loss, to_db
from .pattern import ElementPattern

SWEEP_COLUMNS = ("side_lambda", "psi_s_deg", "r_over_lambda", "strategy", "N", "loss_db", "normalized_db")
TABLE_COLUMNS = ("case", "frequency_hz", "f_e_m", "side_m", "side_lambda", "side_m_rounded", "side_lambda_rounded")

#: (u_i, u_s, efficiency) presets for the sizing tables. "typical" is 60 deg
#: incidence and scattering with 50% re-radiation efficiency.
CASES = {
    "minimum": (1.0, 1.0, 1.0),
    "typical": (0.5, 0.5, 0.5),
}
TABLE_FREQUENCIES_HZ = (0.8e9, 1.9e9, 2.4e9, 5.8e9, 28.0e9, 60.0e9)
TABLE_FOCAL_LENGTHS_M = (100.0, 1000.0)


@dataclass(frozen=True)
class SweepSpec:
    r_lambda: tuple[float, ...]
    side_lambda: tuple[float, ...]
    psi_s_deg: tuple[float, ...] = (0.0,)
    strategies: tuple[str, ...] = ("focusing", "beamforming", "far")
    normalization: str = "free_space_equal_length"
    wavelength: float = 1.0
    pattern: ElementPattern = field(default_factory=ElementPattern)
    efficiency: float = 1.0
    spacing_over_lambda: float = 0.5
    azimuth_deg: float = 0.0
    max_side_elements: int = 400

    def __post_init__(self):
        bad = set(self.strategies) - {"focusing", "beamforming", "far"}
        if bad:
            raise ValueError(f"unknown strategies {sorted(bad)}")
        if self.normalization not in ("free_space_equal_length", "absolute"):
            raise ValueError(f"unknown normalization {self.normalization!r}")
        for psi in self.psi_s_deg:
            if not 0 <= psi < 90:
                raise ValueError(f"psi_s_deg must lie in [0, 90), got {psi}")
        for side in self.side_lambda:
            self.elements_per_side(side)

    def elements_per_side(self, side_lambda: float) -> int:
        "Integer element count per side; the side must be a whole number of pitches."
        x = side_lambda / self.spacing_over_lambda
        n = round(x)
        if n < 1 or abs(x - n) > 1e-9 * max(1.0, abs(x)):
            raise ValueError(
                f"side {side_lambda} lambda is not a positive multiple of the {self.spacing_over_lambda} lambda pitch"
            )
        return n


@dataclass(frozen=True)
class SweepRow:
    side_lambda: float
    psi_s_deg: float
    r_over_lambda: float
    strategy: str
    N: int
    loss_db: float
    normalized_db: float

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, c) for c in SWEEP_COLUMNS)


def _sweep_point(spec: SweepSpec, r_lam: float, psi_deg: float, side: float) -> list[SweepRow]:
    lam = spec.wavelength
    n_side = spec.elements_per_side(side)
    r = r_lam * lam
    psi = math.radians(psi_deg)
    l_s_db = to_db(free_space_loss(2 * r, lam))
    rows = []
    scen = None
    for strategy in spec.strategies:
        if strategy == "far":
            fs = FarScenario(
                r_i=r, r_s=r, wavelength=lam, u_i=1.0, u_s=math.cos(psi),
                efficiency=spec.efficiency, q=spec.pattern.q, n_elements=n_side * n_side,
            )
            gain_db = to_db(far_path_loss_focused(fs))
        else:
            if scen is None:
                scen = Scenario(
                    wavelength=lam,
                    ris=build_square_grid(n_side, n_side, spec.spacing_over_lambda * lam),
                    tx=TerminalPlacement.polar(r, 0.0),
                    rx=TerminalPlacement.polar(r, psi, math.radians(spec.azimuth_deg)),
                    pattern=spec.pattern,
                    efficiency=spec.efficiency,
                )
            b = focusing(scen) if strategy == "focusing" else beamforming(scen)
            gain_db = path_loss(scen, b).gain_db
        rows.append(
            SweepRow(
                side_lambda=side,
                psi_s_deg=psi_deg,
                r_over_lambda=r_lam,
                strategy=strategy,
                N=n_side * n_side,
                loss_db=-gain_db,
                normalized_db=l_s_db + gain_db,
            )
        )
    return rows


def run_sweep(spec: SweepSpec, workers: Optional[int] = None) -> list[SweepRow]:
    """Evaluate every (distance, angle, side, strategy) combination.

    Rows come back ordered by distance, angle, side, then strategy in the
    order of ``spec.strategies``, whatever ``workers`` is. Each row is computed
    independently, so results are bit-identical for any thread count.
    """
    for side in spec.side_lambda:
        n = spec.elements_per_side(side)
        if n > spec.max_side_elements:
            raise ResourceCapError(
                f"side {side} lambda needs {n} elements per side (cap {spec.max_side_elements})"
            )
    points = list(itertools.product(spec.r_lambda, spec.psi_s_deg, spec.side_lambda))
    if workers is None or workers <= 1:
        chunks = [_sweep_point(spec, *p) for p in points]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda p: _sweep_point(spec, *p), points))
    return [row for chunk in chunks for row in chunk]


@dataclass(frozen=True)
class TableRow:
    case: str
    frequency_hz: float
    f_e_m: float
    side_m: float
    side_lambda: float

    @property
    def side_m_rounded(self) -> float:
        return round(self.side_m, 1)

    @property
    def side_lambda_rounded(self) -> float:
        return round(self.side_lambda, 1)

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, c) for c in TABLE_COLUMNS)


def make_tables(
    case: str,
    f_e_list: Iterable[float] = TABLE_FOCAL_LENGTHS_M,
    frequency_list: Iterable[float] = TABLE_FREQUENCIES_HZ,
    q: Optional[float] = None,
    speed_of_light: float = SPEED_OF_LIGHT,
) -> list[TableRow]:
    """Square-RIS side lengths at which the far-case RIS matches specular reflection.

    Rows are ordered by frequency, then focal length. ``speed_of_light`` sets
    the frequency-to-wavelength conversion; the rounded 3e8 m/s reproduces
    reference tables that were generated with it.
    """
    if case not in CASES:
        raise ValueError(f"case must be one of {sorted(CASES)}, got {case!r}")
    u_i, u_s, eps = CASES[case]
    kw = dict(u_i=u_i, u_s=u_s, efficiency=eps)
    if q is not None:
        kw["q"] = q
    f_e_list = list(f_e_list)
    rows = []
    for f in frequency_list:
        lam = speed_of_light / f
        for f_e in f_e_list:
            side_m, side_lam = required_side(f_e, lam, **kw)
            rows.append(TableRow(case, f, f_e, side_m, side_lam))
    return rows


def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, int) and not isinstance(v, bool):
        return str(v)
    return f"{float(v):.12g}"


def format_csv(rows: Sequence, columns: Sequence[str]) -> str:
    "CSV text with a header row, '.' decimals, LF line ends, 12 significant digits."
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt(getattr(row, c)) for c in columns])
    return buf.getvalue()


def emit_csv(rows: Sequence, path: str | Path, columns: Optional[Sequence[str]] = None) -> None:
    if columns is None:
        columns = TABLE_COLUMNS if rows and isinstance(rows[0], TableRow) else SWEEP_COLUMNS
    Path(path).write_bytes(format_csv(rows, columns).encode("ascii"))
