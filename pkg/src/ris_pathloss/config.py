"""YAML scenario and sweep files.

A scenario file describes one link::

    frequency_hz: 28.0e9        # or wavelength_m, not both
    tx_power_w: 1.0
    tx_gain: 1.0
    rx_gain: 1.0
    efficiency: 1.0
    pattern: {q: 0.285}         # or {broadside_gain_dbi: 5.0}
    ris: {rows: 100, cols: 100, spacing_over_lambda: 0.5}
    tx: {r_lambda: 1000, psi_deg: 0, azimuth_deg: 0}
    rx: {r_m: 10.7, psi_deg: 60}
    strategy: focusing          # focusing | beamforming | uniform | custom
    coefficients_csv: b.csv     # only with strategy: custom

A sweep file carries the shared link settings plus a ``sweep`` block; see
:class:`SweepBlock`. Unknown keys are rejected everywhere.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Literal, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .errors import ConfigError
from .farfield import wavelength_from_frequency
from .geometry import TerminalPlacement, build_square_grid
from .link import Scenario
from .pattern import Q0, ElementPattern, pattern_from_broadside_gain_dbi


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class PatternConfig(_Strict):
    q: Optional[float] = Field(default=None, ge=0)
    broadside_gain_dbi: Optional[float] = None

    @model_validator(mode="after")
    def _one_of(self):
        if self.q is not None and self.broadside_gain_dbi is not None:
            raise ValueError("give either q or broadside_gain_dbi, not both")
        return self

    def build(self) -> ElementPattern:
        if self.broadside_gain_dbi is not None:
            return pattern_from_broadside_gain_dbi(self.broadside_gain_dbi)
        return ElementPattern(Q0 if self.q is None else self.q)


class RisConfig(_Strict):
    rows: int = Field(default=10, ge=1)
    cols: int = Field(default=10, ge=1)
    spacing_over_lambda: float = Field(default=0.5, gt=0)


class TerminalConfig(_Strict):
    r_m: Optional[float] = Field(default=None, gt=0)
    r_lambda: Optional[float] = Field(default=None, gt=0)
    psi_deg: float = Field(default=0.0, ge=0, lt=90)
    azimuth_deg: float = 0.0

    @model_validator(mode="after")
    def _one_distance(self):
        if self.r_m is not None and self.r_lambda is not None:
            raise ValueError("give either r_m or r_lambda, not both")
        return self

    def build(self, wavelength: float) -> TerminalPlacement:
        if self.r_m is not None:
            r = self.r_m
        else:
            r = (1000.0 if self.r_lambda is None else self.r_lambda) * wavelength
        return TerminalPlacement.polar(r, math.radians(self.psi_deg), math.radians(self.azimuth_deg))


class _LinkBase(_Strict):
    wavelength_m: Optional[float] = Field(default=None, gt=0)
    frequency_hz: Optional[float] = Field(default=None, gt=0)
    tx_power_w: float = Field(default=1.0, gt=0)
    tx_gain: float = Field(default=1.0, ge=0)
    rx_gain: float = Field(default=1.0, ge=0)
    efficiency: float = Field(default=1.0, gt=0, le=1)
    pattern: PatternConfig = PatternConfig()
    ris: RisConfig = RisConfig()

    @model_validator(mode="after")
    def _wavelength(self):
        if (self.wavelength_m is None) == (self.frequency_hz is None):
            raise ValueError("exactly one of wavelength_m or frequency_hz is required")
        return self

    @property
    def wavelength(self) -> float:
        if self.wavelength_m is not None:
            return self.wavelength_m
        return wavelength_from_frequency(self.frequency_hz)


class ScenarioConfig(_LinkBase):
    tx: TerminalConfig = TerminalConfig()
    rx: TerminalConfig = TerminalConfig()
    strategy: Literal["focusing", "beamforming", "uniform", "custom"] = "focusing"
    coefficients_csv: Optional[str] = None

    @model_validator(mode="after")
    def _custom(self):
        if (self.strategy == "custom") != (self.coefficients_csv is not None):
            raise ValueError("coefficients_csv is required with, and only with, strategy: custom")
        return self

    def build(self) -> Scenario:
        lam = self.wavelength
        return Scenario(
            wavelength=lam,
            ris=build_square_grid(self.ris.rows, self.ris.cols, self.ris.spacing_over_lambda * lam),
            tx=self.tx.build(lam),
            rx=self.rx.build(lam),
            pattern=self.pattern.build(),
            tx_power=self.tx_power_w,
            tx_gain=self.tx_gain,
            rx_gain=self.rx_gain,
            efficiency=self.efficiency,
        )


class SideRange(_Strict):
    start: float = Field(gt=0)
    stop: float = Field(gt=0)
    step: float = Field(gt=0)

    def values(self) -> list[float]:
        n = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return [self.start + i * self.step for i in range(max(n, 0))]


class SweepBlock(_Strict):
    r_lambda: list[float] = Field(min_length=1)
    psi_s_deg: list[float] = Field(default=[0.0], min_length=1)
    side_lambda: Union[list[float], SideRange]
    strategies: list[Literal["focusing", "beamforming", "far"]] = ["focusing", "beamforming", "far"]
    normalization: Literal["free_space_equal_length", "absolute"] = "free_space_equal_length"
    azimuth_deg: float = 0.0
    max_side_elements: int = Field(default=400, ge=1)


class SweepConfig(_LinkBase):
    sweep: SweepBlock

    def build(self):
        from .experiments import SweepSpec

        s = self.sweep
        sides = s.side_lambda.values() if isinstance(s.side_lambda, SideRange) else list(s.side_lambda)
        return SweepSpec(
            r_lambda=tuple(s.r_lambda),
            psi_s_deg=tuple(s.psi_s_deg),
            side_lambda=tuple(sides),
            strategies=tuple(s.strategies),
            normalization=s.normalization,
            wavelength=self.wavelength,
            pattern=self.pattern.build(),
            efficiency=self.efficiency,
            spacing_over_lambda=self.ris.spacing_over_lambda,
            azimuth_deg=s.azimuth_deg,
            max_side_elements=s.max_side_elements,
        )


def _format_error(err: ValidationError) -> str:
    lines = []
    for e in err.errors():
        loc = ".".join(str(p) for p in e["loc"]) or "<root>"
        lines.append(f"{loc}: {e['msg']}")
    return "; ".join(lines)


def parse_config(data: dict) -> ScenarioConfig | SweepConfig:
    if not isinstance(data, dict):
        raise ConfigError("<root>: expected a mapping")
    model = SweepConfig if "sweep" in data else ScenarioConfig
    try:
        return model.model_validate(data)
    except ValidationError as err:
        raise ConfigError(_format_error(err)) from None


def read_config(path: str | Path) -> ScenarioConfig | SweepConfig:
    try:
        data = yaml.safe_load(Path(path).read_text())
    except yaml.YAMLError as err:
        raise ConfigError(f"{path}: not valid YAML ({err})") from None
    except OSError as err:
        raise ConfigError(f"{path}: {err.strerror}") from None
    return parse_config(data)


def load_scenario(path: str | Path):
    """Load a scenario file into a :class:`Scenario`, or a sweep file into a ``SweepSpec``."""
    return read_config(path).build()


def dump_config(cfg: ScenarioConfig | SweepConfig) -> str:
    "Serialise to YAML, omitting unset optional keys."
    return yaml.safe_dump(cfg.model_dump(mode="json", exclude_none=True), sort_keys=False)
