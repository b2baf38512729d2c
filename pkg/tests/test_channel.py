import math

import numpy as np
import pytest

from xlmimo import (
    ArrayConfig,
    ChannelModelKind,
    DegenerateGeometry,
    LinkBudget,
    UserLocation,
    array_response,
    response_norm_sq,
    snr_exact,
)

KINDS = list(ChannelModelKind)


def naive_entries(cfg, u, beta0, kind):
    """Per-element loop straight from the model definitions."""
    x, y = u.r * math.cos(u.theta), u.r * math.sin(u.theta)
    k = 2 * math.pi / cfg.wavelength
    out = []
    for i in range(cfg.num_elements):
        m = i - (cfg.num_elements - 1) / 2
        rm = math.hypot(x, m * cfg.spacing - y)
        if kind is ChannelModelKind.EXACT:
            out.append(math.sqrt(beta0) / rm * np.exp(-1j * k * rm))
        elif kind is ChannelModelKind.UPPER_NEAR_FIELD:
            out.append(math.sqrt(beta0) / u.r * np.exp(-1j * k * rm))
        else:
            out.append(math.sqrt(beta0) / u.r * np.exp(-1j * k * (u.r - m * cfg.spacing * math.sin(u.theta))))
    return np.array(out)


@pytest.mark.parametrize("kind", KINDS)
def test_single_element_all_kinds_identical(kind):
    cfg = ArrayConfig(1, 0.05, 0.1)
    u = UserLocation(7.3, 0.6)
    a = array_response(cfg, u, LinkBudget(10.0, beta0=2.0), kind).entries
    expected = math.sqrt(2.0) / 7.3 * np.exp(-2j * math.pi * 7.3 / 0.1)
    np.testing.assert_allclose(a, [expected], rtol=1e-12)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("m,r,theta", [(5, 10, math.pi / 6), (64, 3.0, -0.9), (128, 40.0, 1.2)])
def test_matches_naive_loop(kind, m, r, theta):
    cfg = ArrayConfig(m, 0.06, 0.125)
    u = UserLocation(r, theta)
    got = array_response(cfg, u, LinkBudget(1.0, beta0=0.3), kind).entries
    # naive phase loses ~k*r*1e-16 rad of precision
    np.testing.assert_allclose(got, naive_entries(cfg, u, 0.3, kind), rtol=1e-10)


def test_boresight_amplitude_symmetry():
    a = array_response(ArrayConfig(33, 0.05, 0.1), UserLocation(2.0, 0.0)).entries
    np.testing.assert_allclose(np.abs(a), np.abs(a[::-1]), rtol=1e-14)


def test_norm_matches_snr_exact(xl_array, budget_50db):
    u = UserLocation(15, 0.3)
    a = array_response(xl_array, u, budget_50db)
    assert response_norm_sq(a) * budget_50db.tx_snr == pytest.approx(snr_exact(xl_array, u, budget_50db), rel=1e-12)


def test_norm_single_element():
    a = array_response(ArrayConfig(1, 0.05, 0.1), UserLocation(4.0, 0.2), LinkBudget(1, beta0=3.0))
    assert response_norm_sq(a) == pytest.approx(3.0 / 16, rel=1e-14)


def test_norm_far_field_constant_amplitude():
    a = array_response(ArrayConfig(300, 0.05, 0.1), UserLocation(9.0, 0.7), LinkBudget(1, beta0=0.5),
                       ChannelModelKind.FAR_FIELD_UPW)
    assert response_norm_sq(a) == pytest.approx(300 * 0.5 / 81, rel=1e-13)


def test_norm_by_term_summation():
    cfg = ArrayConfig(5, 0.06, 0.125)
    u = UserLocation(10, math.pi / 6)
    total = 0.0
    for m in (-2, -1, 0, 1, 2):
        total += 1.0 / (100 + (m * 0.06) ** 2 - 2 * 10 * m * 0.06 * math.sin(math.pi / 6))
    assert response_norm_sq(array_response(cfg, u)) == pytest.approx(total, rel=1e-13)


def test_structure_shared_between_models():
    cfg = ArrayConfig(257, 0.05, 0.1)
    u = UserLocation(6.0, -0.4)
    exact, upper, upw = (array_response(cfg, u, kind=k).entries for k in KINDS)
    np.testing.assert_allclose(np.angle(exact / upper), 0, atol=1e-12)
    np.testing.assert_allclose(np.abs(upper), np.abs(upw), rtol=1e-14)
    for a in (exact, upper, upw):
        assert np.all(np.abs(a) > 0)


def test_far_field_convergence():
    cfg = ArrayConfig(65, 0.05, 0.1)
    theta = 0.5
    amp_err, phase_err = [], []
    for r in (100.0, 1000.0, 10000.0, 100000.0):
        u = UserLocation(r, theta)
        exact = array_response(cfg, u).entries
        upw = array_response(cfg, u, kind=ChannelModelKind.FAR_FIELD_UPW).entries
        amp_err.append(np.max(np.abs(np.abs(exact) / np.abs(upw) - 1)))
        phase_err.append(np.max(np.abs(np.angle(exact / upw))))
    # both errors shrink like 1/r once r exceeds the aperture
    assert all(b < a / 5 for a, b in zip(amp_err, amp_err[1:]))
    assert all(b < a / 5 for a, b in zip(phase_err, phase_err[1:]))
    assert amp_err[-1] < 1e-5 and phase_err[-1] < 1e-3


def test_responses_are_read_only():
    a = array_response(ArrayConfig(3, 0.05, 0.1), UserLocation(1.0, 0.0))
    with pytest.raises(ValueError):
        a.entries[0] = 0


@pytest.mark.parametrize("kind", KINDS)
def test_degenerate_propagates(kind):
    with pytest.raises(DegenerateGeometry):
        array_response(ArrayConfig(11, 0.1, 0.2), UserLocation(0.3, math.pi / 2), kind=kind)
