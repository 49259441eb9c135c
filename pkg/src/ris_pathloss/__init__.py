"""Path loss of RIS-enabled SISO channels from a per-element scattering model."""

from .coeffs import CoefficientSet, beamforming, custom, focusing, uniform
from .errors import ConfigError, GeometryError, ModelDomainError, ResourceCapError
from .farfield import (
    FarScenario,
    effective_focal_length,
    far_path_loss_area,
    far_path_loss_focused,
    far_path_loss_general,
    plate_path_loss,
    plate_rcs,
    required_area,
    required_side,
    specular_ratio,
)
from .geometry import LinkGeometry, RisArray, TerminalPlacement, build_square_grid, link_geometry
from .link import (
    PathLossResult,
    Scenario,
    element_received_power,
    free_space_loss,
    path_loss,
    path_phase,
    receive_power,
)
from .pattern import Q0, ElementPattern, benchmark_pattern, effective_aperture, gain, pattern_from_broadside_gain

__version__ = "0.1.0"
