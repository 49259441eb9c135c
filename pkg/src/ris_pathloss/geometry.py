"""RIS element layouts and per-element link geometry.

Canonical frame: the RIS lies in the plane z = 0 with broadside normal +z and
the grid centred on the origin. Terminals must have a positive z component.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import GeometryError

Z_HAT = np.array([0.0, 0.0, 1.0])


def unit(v: ArrayLike) -> NDArray[np.float64]:
    "Normalise a vector (or the rows of an (M, 3) array)."
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


@dataclass(frozen=True, eq=False)
class RisArray:
    """Planar array of N = rows * cols scattering elements.

    Attributes
    ----------
    positions : (N, 3) ndarray
        Element positions p_n in metres, row-major order.
    normal : (3,) ndarray
        Unit broadside normal.
    spacing : float
        Element pitch in metres.
    rows, cols : int
    area : float
        Physical area in m^2, ``N * spacing**2`` for a square-pitch grid.
    """

    positions: NDArray[np.float64]
    normal: NDArray[np.float64]
    spacing: float
    rows: int
    cols: int
    area: float

    @property
    def n_elements(self) -> int:
        return self.rows * self.cols

    @property
    def side_lengths(self) -> tuple[float, float]:
        "Physical extent (rows * spacing, cols * spacing)."
        return self.rows * self.spacing, self.cols * self.spacing


def build_square_grid(rows: int, cols: int, spacing: float) -> RisArray:
    """Uniform rectangular grid centred on the origin in the z = 0 plane.

    Element (r, c) sits at ``((r - (rows-1)/2) * spacing, (c - (cols-1)/2) * spacing, 0)``.
    Grids with an even count per side have no element at the origin.
    """
    if int(rows) != rows or int(cols) != cols or rows < 1 or cols < 1:
        raise ValueError(f"rows and cols must be positive integers, got {rows}, {cols}")
    if not spacing > 0:
        raise ValueError(f"spacing must be positive, got {spacing}")
    rows, cols = int(rows), int(cols)
    x = (np.arange(rows) - (rows - 1) / 2.0) * spacing
    y = (np.arange(cols) - (cols - 1) / 2.0) * spacing
    xx, yy = np.meshgrid(x, y, indexing="ij")
    positions = np.column_stack([xx.ravel(), yy.ravel(), np.zeros(rows * cols)])
    return RisArray(
        positions=positions,
        normal=Z_HAT.copy(),
        spacing=float(spacing),
        rows=rows,
        cols=cols,
        area=rows * cols * spacing**2,
    )


@dataclass(frozen=True, eq=False)
class TerminalPlacement:
    """Position of a transmitter or receiver in the RIS frame (metres)."""

    position: NDArray[np.float64]

    def __post_init__(self):
        object.__setattr__(self, "position", np.asarray(self.position, dtype=float).reshape(3))

    @classmethod
    def polar(cls, r: float, psi: float, azimuth: float = 0.0) -> "TerminalPlacement":
        """Place a terminal at distance ``r`` and off-broadside angle ``psi`` (rad).

        ``azimuth`` rotates the plane of ``psi`` about the normal; 0 is the x-z plane.
        """
        if not r > 0:
            raise ValueError(f"distance must be positive, got {r}")
        if not 0 <= psi < np.pi / 2:
            raise GeometryError(f"psi must lie in [0, pi/2), got {psi}")
        s = np.sin(psi)
        return cls(r * np.array([s * np.cos(azimuth), s * np.sin(azimuth), np.cos(psi)]))

    @property
    def distance(self) -> float:
        return float(np.linalg.norm(self.position))

    @property
    def direction(self) -> NDArray[np.float64]:
        "Unit vector from the origin toward the terminal."
        return unit(self.position)


@dataclass(frozen=True, eq=False)
class LinkGeometry:
    """Per-element distances and broadside dot products.

    ``u_i[n] = unit(tx - p_n) . n_hat`` and ``u_s[n] = unit(rx - p_n) . n_hat``.
    """

    r_i: NDArray[np.float64]
    r_s: NDArray[np.float64]
    u_i: NDArray[np.float64]
    u_s: NDArray[np.float64]

    def swapped(self) -> "LinkGeometry":
        return LinkGeometry(self.r_s, self.r_i, self.u_s, self.u_i)


def dot_rows(a: NDArray[np.float64], v: ArrayLike) -> NDArray[np.float64]:
    "Row-wise dot product with a fixed 3-vector, in a fixed evaluation order (no BLAS)."
    v = np.asarray(v, dtype=float)
    return a[:, 0] * v[0] + a[:, 1] * v[1] + a[:, 2] * v[2]


def _leg(ris: RisArray, terminal: TerminalPlacement, label: str):
    d = terminal.position[None, :] - ris.positions
    r = np.sqrt(d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1] + d[:, 2] * d[:, 2])
    if np.any(r <= 0):
        raise GeometryError(f"{label} coincides with an element")
    u = dot_rows(d, ris.normal) / r
    if np.any(u <= 0):
        raise GeometryError(f"{label} must lie strictly in front of the RIS plane")
    return r, u


def link_geometry(ris: RisArray, tx: TerminalPlacement, rx: TerminalPlacement) -> LinkGeometry:
    "Distances and dot products for every element, in the array's row-major order."
    r_i, u_i = _leg(ris, tx, "transmitter")
    r_s, u_s = _leg(ris, rx, "receiver")
    return LinkGeometry(r_i=r_i, r_s=r_s, u_i=u_i, u_s=u_s)
