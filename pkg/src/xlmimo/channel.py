"""Line-of-sight array response under spherical and simplified wavefronts.

Phases are built as ``exp(-j 2pi (r_m - r)/lambda)`` from cancellation-free
relative path lengths, then multiplied once by the common factor
``exp(-j 2pi r/lambda)``. The common factor has unit modulus and drops out
of every SNR, SINR and correlation computed from these vectors.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .geometry import ArrayConfig, UserLocation, element_distances, relative_path_lengths


class ChannelModelKind(enum.Enum):
    EXACT = "Exact"
    UPPER_NEAR_FIELD = "UpperNearField"
    FAR_FIELD_UPW = "FarFieldUPW"


@dataclass(frozen=True)
class LinkBudget:
    """Reference SNR ``P_bar * beta0`` (linear) of one user, with ``sigma^2 = 1``.

    ``beta0`` is the channel power gain at the 1 m reference distance. When
    only the product is known leave ``beta0`` at 1.
    """

    ref_snr: float
    beta0: float = 1.0

    def __post_init__(self):
        if not self.ref_snr > 0:
            raise ConfigError(f"ref_snr must be positive, got {self.ref_snr!r}")
        if not self.beta0 > 0:
            raise ConfigError(f"beta0 must be positive, got {self.beta0!r}")

    @classmethod
    def from_db(cls, ref_snr_db: float, beta0: float = 1.0) -> "LinkBudget":
        return cls(10 ** (ref_snr_db / 10), beta0)

    @property
    def tx_snr(self) -> float:
        """Transmit SNR ``P_bar = P / sigma^2``."""
        return self.ref_snr / self.beta0


@dataclass(frozen=True, eq=False)
class ArrayResponse:
    """Length-``M`` complex channel vector of one user (read-only)."""

    entries: np.ndarray
    kind: ChannelModelKind = ChannelModelKind.EXACT

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.ndim != 1 or entries.size == 0:
            raise ConfigError("array response must be a non-empty vector")
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)

    def __len__(self):
        return self.entries.size


def array_response(
    cfg: ArrayConfig,
    u: UserLocation,
    budget: LinkBudget | None = None,
    kind: ChannelModelKind = ChannelModelKind.EXACT,
) -> ArrayResponse:
    """Channel vector of user ``u`` under the selected wavefront model.

    ``EXACT`` uses the exact element distance for amplitude and phase,
    ``UPPER_NEAR_FIELD`` keeps the exact phase with the center-distance
    amplitude, and ``FAR_FIELD_UPW`` uses the center-distance amplitude
    with a linear phase ramp in ``sin(theta)``.
    """
    beta0 = 1.0 if budget is None else budget.beta0
    k = 2 * math.pi / cfg.wavelength
    common = np.exp(-1j * k * u.r)

    if kind is ChannelModelKind.FAR_FIELD_UPW:
        # still reject users sitting on the array
        relative_path_lengths(cfg, u)
        delta = -cfg.offsets() * cfg.spacing * math.sin(u.theta)
        amplitude = np.full(cfg.num_elements, math.sqrt(beta0) / u.r)
    else:
        delta = relative_path_lengths(cfg, u)
        if kind is ChannelModelKind.EXACT:
            amplitude = math.sqrt(beta0) / element_distances(cfg, u)
        elif kind is ChannelModelKind.UPPER_NEAR_FIELD:
            amplitude = np.full(cfg.num_elements, math.sqrt(beta0) / u.r)
        else:
            raise ConfigError(f"unknown channel model {kind!r}")

    return ArrayResponse(amplitude * np.exp(-1j * k * delta) * common, kind)


def response_norm_sq(resp: ArrayResponse) -> float:
    """Channel power gain ``||a||^2``."""
    return float(np.vdot(resp.entries, resp.entries).real)
