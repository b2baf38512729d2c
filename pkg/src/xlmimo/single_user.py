"""Single-user SNR with optimal MRC/MRT under the spherical wavefront model.

All values are linear power ratios; dB conversion is left to callers.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .channel import LinkBudget
from .errors import BoresightOnly, EndfireTooClose, ValidityWarning, WrongBranch
from .geometry import ArrayConfig, UserLocation, check_geometry

ENDFIRE_COS_TOL = 1e-9
"Below this ``|cos(theta)|`` the user is treated as lying on the array axis."

SPECIAL_ANGLE_TOL = 1e-12

VALIDITY_EPSILON = 0.1
"Largest ``d/r`` for which the closed form is used without a warning."


def _is_endfire(theta: float) -> bool:
    return abs(math.cos(theta)) < ENDFIRE_COS_TOL


def _half_extent(cfg: ArrayConfig) -> float:
    # closed forms integrate over M*d, one spacing more than the aperture
    return cfg.num_elements * cfg.spacing / 2


def _check_span_domain(cfg: ArrayConfig, u: UserLocation) -> None:
    if _is_endfire(u.theta) and u.r <= _half_extent(cfg):
        raise EndfireTooClose(
            f"user on the array axis at r={u.r} m needs r > Md/2 = {_half_extent(cfg)} m"
        )


def snr_exact(cfg: ArrayConfig, u: UserLocation, budget: LinkBudget) -> float:
    """SNR by direct summation of the per-element channel gains."""
    check_geometry(cfg, u)
    eps = u.epsilon(cfg)
    m = cfg.offsets()
    terms = 1.0 / (1 - 2 * m * eps * math.sin(u.theta) + (m * eps) ** 2)
    return budget.ref_snr / u.r**2 * float(np.sum(terms))


def angular_span(cfg: ArrayConfig, u: UserLocation) -> float:
    """Angle subtended at the user by the two ends of the array.

    The defining pair ``arctan(A - tan th) + arctan(A + tan th)`` with
    ``A = Md / (2 r cos th)`` is combined through the arctangent addition
    rule; both terms scaled by ``r^2 cos^2 th`` give
    ``atan2(M d r cos th, r^2 - (Md/2)^2)``. This avoids the cancellation of
    two nearly opposite arctangents when ``Md << r`` or ``th -> +-pi/2``.
    """
    _check_span_domain(cfg, u)
    h = _half_extent(cfg)
    return math.atan2(2 * h * u.r * math.cos(u.theta), (u.r - h) * (u.r + h))


def angular_span_alt(cfg: ArrayConfig, u: UserLocation) -> float:
    """Angular span split by the line from the array center to the user.

    Each half-angle is ``arctan((Md/2) cos th / (r -+ (Md/2) sin th))``,
    taken in ``(0, pi)``: a negative denominator means the half-angle is
    obtuse, which ``atan2`` resolves.
    """
    _check_span_domain(cfg, u)
    h = _half_extent(cfg)
    hc = h * math.cos(u.theta)
    hs = h * math.sin(u.theta)
    return math.atan2(hc, u.r - hs) + math.atan2(hc, u.r + hs)


def snr_closed_form(cfg: ArrayConfig, u: UserLocation, budget: LinkBudget) -> float:
    """Closed-form SNR ``P_bar beta0 / (d r cos th) * angular_span``.

    On the array axis the limiting form is used (see :func:`snr_special_case`).
    Emits :class:`ValidityWarning` when ``d/r`` exceeds 0.1.
    """
    _check_span_domain(cfg, u)
    if u.epsilon(cfg) > VALIDITY_EPSILON:
        warnings.warn(
            f"d/r = {u.epsilon(cfg):.3g} is not small; closed-form SNR may be inaccurate",
            ValidityWarning,
            stacklevel=2,
        )
    if _is_endfire(u.theta):
        return _endfire_snr(cfg, u, budget)
    span = angular_span(cfg, u)
    return budget.ref_snr / (cfg.spacing * u.r * math.cos(u.theta)) * span


def snr_upw(cfg: ArrayConfig, u: UserLocation, budget: LinkBudget) -> float:
    """Plane-wave SNR ``P_bar M beta0 / r^2``, independent of direction."""
    return budget.ref_snr * cfg.num_elements / u.r**2


def snr_limit(cfg: ArrayConfig, u: UserLocation, budget: LinkBudget) -> float:
    """Large-array SNR limit ``P_bar beta0 pi / (d r cos th)``."""
    if _is_endfire(u.theta):
        raise BoresightOnly("SNR limit is undefined for users on the array axis")
    return budget.ref_snr * math.pi / (cfg.spacing * u.r * math.cos(u.theta))


def snr_ratio(cfg: ArrayConfig, u: UserLocation) -> float:
    """Ratio of the closed-form spherical SNR to the plane-wave SNR."""
    _check_span_domain(cfg, u)
    if _is_endfire(u.theta):
        h = _half_extent(cfg)
        return u.r**2 / ((u.r - h) * (u.r + h))
    md = cfg.num_elements * cfg.spacing
    return u.r * angular_span(cfg, u) / (md * math.cos(u.theta))


def _endfire_snr(cfg, u, budget):
    h = _half_extent(cfg)
    return budget.ref_snr * cfg.num_elements / ((u.r - h) * (u.r + h))


def snr_special_case(cfg: ArrayConfig, u: UserLocation, budget: LinkBudget) -> float:
    """Closed-form SNR for a user on the x-axis (``th = 0``) or the y-axis."""
    if abs(u.theta) <= SPECIAL_ANGLE_TOL:
        x = _half_extent(cfg) / u.r
        return budget.ref_snr * 2 / (cfg.spacing * u.r) * math.atan(x)
    if abs(abs(u.theta) - math.pi / 2) <= SPECIAL_ANGLE_TOL:
        if u.r <= _half_extent(cfg):
            raise EndfireTooClose(
                f"user on the array axis at r={u.r} m needs r > Md/2 = {_half_extent(cfg)} m"
            )
        return _endfire_snr(cfg, u, budget)
    raise WrongBranch(f"theta={u.theta} is neither 0 nor +-pi/2")


@dataclass(frozen=True)
class SnrReport:
    snr_exact: float
    snr_closed_form: float
    snr_upw: float
    snr_limit: float
    angular_span: float
    snr_ratio: float


def snr_report(cfg: ArrayConfig, u: UserLocation, budget: LinkBudget) -> SnrReport:
    """All single-user quantities for one configuration (``|theta| < pi/2``)."""
    closed = snr_closed_form(cfg, u, budget)
    upw = snr_upw(cfg, u, budget)
    return SnrReport(
        snr_exact=snr_exact(cfg, u, budget),
        snr_closed_form=closed,
        snr_upw=upw,
        snr_limit=snr_limit(cfg, u, budget),
        angular_span=angular_span(cfg, u),
        snr_ratio=closed / upw,
    )
