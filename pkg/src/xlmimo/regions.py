"""Near/far-field partition by Rayleigh distance and critical distance.

The Rayleigh distance bounds the phase spread across the aperture and
scales with the electrical size; the critical distance bounds the spread
of element powers and scales with the physical size only.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import ConfigError, SingleElement, ThresholdOrderViolation
from .geometry import ArrayConfig, UserLocation

DEFAULT_ALPHA = 0.8


class FieldRegion(enum.Enum):
    FAR_FIELD = "FarField"
    UPPER_NEAR_FIELD = "UpperNearField"
    LOWER_NEAR_FIELD = "LowerNearField"


@dataclass(frozen=True)
class RegionThresholds:
    rayleigh: float
    critical: float
    alpha: float


def _require_aperture(cfg: ArrayConfig) -> float:
    if cfg.num_elements < 2:
        raise SingleElement("a single-element array has no near field")
    return cfg.aperture


def _check_alpha(alpha: float) -> None:
    if not 0 < alpha < 1:
        raise ConfigError(f"alpha must lie in (0, 1), got {alpha!r}")


def rayleigh_distance(cfg: ArrayConfig) -> float:
    """``2 D^2 / lambda`` with ``D = (M-1) d``."""
    D = _require_aperture(cfg)
    return 2 * D**2 / cfg.wavelength


def power_ratio(cfg: ArrayConfig, u: UserLocation) -> float:
    """Weakest-to-strongest element power ratio over a continuous aperture.

    The strongest point is the foot of the perpendicular when it falls on
    the aperture, else the nearer end; the weakest is the farther end.
    """
    half = cfg.aperture / 2
    if half == 0:
        return 1.0
    proj_sq = (u.r * math.cos(u.theta)) ** 2
    along = u.r * abs(math.sin(u.theta))
    farthest = proj_sq + (along + half) ** 2
    if along <= half:
        return proj_sq / farthest
    return (proj_sq + (along - half) ** 2) / farthest


def critical_distance(cfg: ArrayConfig, alpha: float = DEFAULT_ALPHA) -> float:
    """Smallest ``r`` with ``power_ratio >= alpha`` in every direction.

    The worst direction is along the array axis, where the ratio is
    ``((r - D/2) / (r + D/2))^2``; solving for ``r`` gives
    ``(D/2) (1 + sqrt(alpha)) / (1 - sqrt(alpha))``.
    """
    _check_alpha(alpha)
    D = _require_aperture(cfg)
    s = math.sqrt(alpha)
    return D / 2 * (1 + s) / (1 - s)


def region_thresholds(cfg: ArrayConfig, alpha: float = DEFAULT_ALPHA) -> RegionThresholds:
    return RegionThresholds(rayleigh_distance(cfg), critical_distance(cfg, alpha), alpha)


def classify_region(cfg: ArrayConfig, u: UserLocation, alpha: float = DEFAULT_ALPHA) -> FieldRegion:
    """Assign the user to a field region; a boundary belongs to the farther region."""
    t = region_thresholds(cfg, alpha)
    if not t.critical < t.rayleigh:
        raise ThresholdOrderViolation(
            f"critical distance {t.critical:.6g} m is not below Rayleigh distance {t.rayleigh:.6g} m"
        )
    if u.r >= t.rayleigh:
        return FieldRegion.FAR_FIELD
    if u.r >= t.critical:
        return FieldRegion.UPPER_NEAR_FIELD
    return FieldRegion.LOWER_NEAR_FIELD
