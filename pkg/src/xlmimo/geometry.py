"""Uniform linear array placement and exact user-to-element distances.

The array lies on the y-axis, centered at the origin. Element ``i`` (zero
based) sits at ``y = (i - (M-1)/2) * d``; the signed offset
``m = i - (M-1)/2`` is an integer for odd ``M`` and a half-integer for even
``M``. Users are given in polar form ``(r, theta)`` relative to the array
center, with ``theta`` measured from the x-axis (boresight).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DegenerateGeometry

SPEED_OF_LIGHT = 2.998e8
"Propagation speed in m/s used for frequency/wavelength conversion."

_REL_TOL = 1e-12


@dataclass(frozen=True)
class ArrayConfig:
    """ULA with ``num_elements`` isotropic elements at ``spacing`` meters."""

    num_elements: int
    spacing: float
    wavelength: float

    def __post_init__(self):
        if int(self.num_elements) != self.num_elements or self.num_elements < 1:
            raise ConfigError(f"num_elements must be a positive integer, got {self.num_elements!r}")
        object.__setattr__(self, "num_elements", int(self.num_elements))
        if not self.spacing > 0:
            raise ConfigError(f"spacing must be positive, got {self.spacing!r}")
        if not self.wavelength > 0:
            raise ConfigError(f"wavelength must be positive, got {self.wavelength!r}")
        if self.spacing > 0.5 * self.wavelength * (1 + _REL_TOL):
            raise ConfigError(
                f"spacing {self.spacing} exceeds half a wavelength ({0.5 * self.wavelength})"
            )

    @classmethod
    def half_wavelength(cls, num_elements: int, carrier_freq: float) -> "ArrayConfig":
        """Array with ``d = lambda/2`` at carrier frequency ``carrier_freq`` (Hz)."""
        wavelength = SPEED_OF_LIGHT / carrier_freq
        return cls(num_elements, wavelength / 2, wavelength)

    @property
    def aperture(self) -> float:
        """Physical dimension ``D = (M-1) d``."""
        return (self.num_elements - 1) * self.spacing

    def offsets(self) -> np.ndarray:
        """Signed centered element offsets ``m`` (units of spacing)."""
        return np.arange(self.num_elements) - (self.num_elements - 1) / 2

    def with_elements(self, num_elements: int) -> "ArrayConfig":
        return ArrayConfig(num_elements, self.spacing, self.wavelength)


@dataclass(frozen=True)
class UserLocation:
    """Single-antenna user at distance ``r`` (m) and angle ``theta`` (rad)."""

    r: float
    theta: float

    def __post_init__(self):
        if not self.r > 0:
            raise ConfigError(f"user distance must be positive, got {self.r!r}")
        if not abs(self.theta) <= math.pi / 2 * (1 + _REL_TOL):
            raise ConfigError(f"user angle must lie in [-pi/2, pi/2], got {self.theta!r}")

    @classmethod
    def from_degrees(cls, r: float, theta_deg: float) -> "UserLocation":
        return cls(r, math.radians(theta_deg))

    def cartesian(self) -> tuple[float, float]:
        return self.r * math.cos(self.theta), self.r * math.sin(self.theta)

    def epsilon(self, cfg: ArrayConfig) -> float:
        """Normalized spacing ``d / r``."""
        return cfg.spacing / self.r


def element_positions(cfg: ArrayConfig) -> np.ndarray:
    """Element coordinates as an ``(M, 2)`` array of ``(x, y)`` in meters."""
    pos = np.zeros((cfg.num_elements, 2))
    pos[:, 1] = cfg.offsets() * cfg.spacing
    return pos


def min_max_element_distance(cfg: ArrayConfig, u: UserLocation) -> tuple[float, float]:
    """Smallest and largest user-to-element distance.

    Evaluated in O(1): the nearest element is the one closest to the foot of
    the perpendicular from the user onto the array axis, the farthest is one
    of the two end elements.
    """
    x, y = u.cartesian()
    half = cfg.aperture / 2
    centre = (cfg.num_elements - 1) / 2
    nearest = min(max(round(y / cfg.spacing + centre), 0), cfg.num_elements - 1)
    y_near = (nearest - centre) * cfg.spacing
    dmin = math.hypot(x, y_near - y)
    dmax = max(math.hypot(x, half - y), math.hypot(x, -half - y))
    return dmin, dmax


def check_geometry(cfg: ArrayConfig, u: UserLocation) -> None:
    """Raise :class:`DegenerateGeometry` if any element is within ``d/2`` of the user."""
    dmin, _ = min_max_element_distance(cfg, u)
    if dmin < cfg.spacing / 2:
        raise DegenerateGeometry(
            f"user at r={u.r}, theta={u.theta} is {dmin:.3g} m from an element "
            f"(limit {cfg.spacing / 2:.3g} m)"
        )


def _distance(r: float, theta: float, m, spacing: float):
    eps = spacing / r
    return r * np.sqrt(1 - 2 * m * eps * np.sin(theta) + (m * eps) ** 2)


def element_distance(cfg: ArrayConfig, u: UserLocation, m: float) -> float:
    """Exact distance from the user to the element at signed offset ``m``."""
    if abs(2 * m) > cfg.num_elements - 1 or (2 * m + cfg.num_elements - 1) % 2 != 0:
        raise ConfigError(f"offset {m} is not an element of a {cfg.num_elements}-element array")
    check_geometry(cfg, u)
    return float(_distance(u.r, u.theta, m, cfg.spacing))


def element_distances(cfg: ArrayConfig, u: UserLocation) -> np.ndarray:
    """Distances to all ``M`` elements, ordered by element index."""
    check_geometry(cfg, u)
    return _distance(u.r, u.theta, cfg.offsets(), cfg.spacing)


def relative_path_lengths(cfg: ArrayConfig, u: UserLocation) -> np.ndarray:
    """``r_m - r`` for every element, free of cancellation at large ``r``."""
    check_geometry(cfg, u)
    eps = cfg.spacing / u.r
    m = cfg.offsets()
    q = -2 * m * eps * math.sin(u.theta) + (m * eps) ** 2
    # sqrt(1+q) - 1 == q / (sqrt(1+q) + 1)
    return u.r * q / (np.sqrt(1 + q) + 1)
