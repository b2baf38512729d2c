"""Multi-user uplink with linear receive beamforming.

Noise power is fixed to 1, so each user's transmit power is its transmit
SNR ``P_bar_k`` and the channel gain ``beta0`` lives in the responses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .channel import ArrayResponse, ChannelModelKind, LinkBudget, array_response
from .errors import ConfigError, DimensionMismatch
from .geometry import ArrayConfig, UserLocation


@dataclass(frozen=True)
class UserSet:
    users: tuple[tuple[UserLocation, LinkBudget], ...]

    def __post_init__(self):
        users = tuple((u, b) for u, b in self.users)
        if not users:
            raise ConfigError("a user set needs at least one user")
        object.__setattr__(self, "users", users)

    def __len__(self):
        return len(self.users)

    @property
    def powers(self) -> np.ndarray:
        return np.array([b.tx_snr for _, b in self.users])

    def responses(self, cfg: ArrayConfig, kind=ChannelModelKind.EXACT) -> list[ArrayResponse]:
        return [array_response(cfg, u, b, kind) for u, b in self.users]


@dataclass(frozen=True, eq=False)
class Beamformer:
    weights: np.ndarray
    unit_norm: bool = False

    def __post_init__(self):
        w = np.array(self.weights, dtype=complex)
        norm = np.linalg.norm(w)
        if w.ndim != 1 or not norm > 0:
            raise ConfigError("beamformer weights must be a nonzero vector")
        if self.unit_norm and abs(norm - 1) > 1e-12:
            raise ConfigError(f"beamformer flagged unit-norm has norm {norm}")
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return self.weights.size


def mrc_beamformer(resp: ArrayResponse) -> Beamformer:
    a = resp.entries
    return Beamformer(a / np.linalg.norm(a), unit_norm=True)


def _same_length(*vectors) -> None:
    sizes = {len(v) for v in vectors}
    if len(sizes) > 1:
        raise DimensionMismatch(f"vector lengths differ: {sorted(sizes)}")


def correlation(resp_k: ArrayResponse, resp_i: ArrayResponse) -> float:
    """Normalized squared inner product ``|a_k^H a_i|^2 / (||a_k||^2 ||a_i||^2)``."""
    _same_length(resp_k, resp_i)
    a, b = resp_k.entries, resp_i.entries
    rho = abs(np.vdot(a, b)) ** 2 / (np.vdot(a, a).real * np.vdot(b, b).real)
    return float(min(rho, 1.0))


def _check_system(userset, beamformers, responses):
    if not len(userset) == len(beamformers) == len(responses):
        raise DimensionMismatch(
            f"{len(userset)} users, {len(beamformers)} beamformers, {len(responses)} responses"
        )
    _same_length(*beamformers, *responses)


def sinr(
    userset: UserSet,
    beamformers: Sequence[Beamformer],
    responses: Sequence[ArrayResponse],
    k: int,
) -> float:
    """SINR of user ``k`` for arbitrary receive beamformers."""
    _check_system(userset, beamformers, responses)
    if not 0 <= k < len(userset):
        raise IndexError(f"user index {k} out of range for {len(userset)} users")
    p = userset.powers
    v = beamformers[k].weights
    gains = np.array([abs(np.vdot(v, a.entries)) ** 2 for a in responses])
    interference = float(np.sum(np.delete(p * gains, k)))
    noise = float(np.vdot(v, v).real)
    return float(p[k] * gains[k] / (interference + noise))


def sinr_mrc(userset: UserSet, responses: Sequence[ArrayResponse], k: int) -> float:
    """MRC SINR of user ``k`` written with correlation coefficients."""
    if len(userset) != len(responses):
        raise DimensionMismatch(f"{len(userset)} users, {len(responses)} responses")
    _same_length(*responses)
    p = userset.powers
    norms = np.array([np.vdot(a.entries, a.entries).real for a in responses])
    interference = sum(
        p[i] * correlation(responses[k], responses[i]) * norms[i]
        for i in range(len(responses))
        if i != k
    )
    return float(p[k] * norms[k] / (interference + 1.0))


def sum_rate(
    userset: UserSet,
    beamformers: Sequence[Beamformer],
    responses: Sequence[ArrayResponse],
) -> float:
    """Achievable sum rate in bps/Hz."""
    return float(sum(np.log2(1 + sinr(userset, beamformers, responses, k)) for k in range(len(userset))))


def mrc_sinrs(channels: np.ndarray, powers: np.ndarray) -> np.ndarray:
    """MRC SINRs of all users at once from a ``(K, M)`` channel matrix.

    Uses the Gram matrix ``G = H H^H``:
    ``gamma_k = p_k G_kk / (sum_{i != k} p_i |G_ki|^2 / G_kk + 1)``.
    """
    channels = np.atleast_2d(channels)
    powers = np.asarray(powers, dtype=float)
    if powers.shape != (channels.shape[0],):
        raise DimensionMismatch(f"{powers.size} powers for {channels.shape[0]} users")
    gram = channels.conj() @ channels.T
    norms = gram.diagonal().real
    leak = np.abs(gram) ** 2 / norms[:, None]
    np.fill_diagonal(leak, 0.0)
    return powers * norms / (leak @ powers + 1.0)
