"""Spherical-wavefront performance analysis for extremely large-scale ULAs."""

__version__ = "0.1.0"

from .channel import ArrayResponse, ChannelModelKind, LinkBudget, array_response, response_norm_sq
from .errors import (
    BoresightOnly,
    ConfigError,
    DegenerateGeometry,
    DimensionMismatch,
    DomainError,
    EndfireTooClose,
    SingleElement,
    ThresholdOrderViolation,
    ValidityWarning,
    WrongBranch,
    XlMimoError,
)
from .geometry import (
    ArrayConfig,
    UserLocation,
    element_distance,
    element_distances,
    element_positions,
    min_max_element_distance,
)
from .multiuser import (
    Beamformer,
    UserSet,
    correlation,
    mrc_beamformer,
    mrc_sinrs,
    sinr,
    sinr_mrc,
    sum_rate,
)
from .regions import (
    FieldRegion,
    RegionThresholds,
    classify_region,
    critical_distance,
    power_ratio,
    rayleigh_distance,
)
from .single_user import (
    SnrReport,
    angular_span,
    angular_span_alt,
    snr_closed_form,
    snr_exact,
    snr_limit,
    snr_ratio,
    snr_report,
    snr_special_case,
    snr_upw,
)
