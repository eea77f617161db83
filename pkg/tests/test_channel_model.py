import math

import numpy as np
import pytest

from relayic.channel_model import (REGIME_KINDS, ChannelParams, link_budget, regime,
                                   sample_channels, swap_users, with_capacities)


def test_rejects_bad_values():
    with pytest.raises(ValueError):
        ChannelParams(1, 1, 1, math.nan, 0, 0)
    with pytest.raises(ValueError):
        ChannelParams(1, 1, 1, 1, 0, 0, c1=-1)
    assert ChannelParams(1, 1, 1, 1, 0, 0, c1=math.inf).c1 == math.inf


def test_json_roundtrip():
    p = ChannelParams(1.5, -0.2, 3, 4, 0.1, -0.3, 1.0, math.inf)
    q = ChannelParams.from_json(p.to_json())
    assert q == p
    with pytest.raises(ValueError):
        ChannelParams.from_dict({"h11": 1})
    with pytest.raises(ValueError):
        ChannelParams.from_dict({**p.to_dict(), "bogus": 1})


def test_link_budget_and_rho():
    p = ChannelParams(2, 3, 4, 5, 6, 2, 0, 0)
    b = link_budget(p)
    assert (b.snr1, b.snr2, b.inr1, b.inr2, b.snr_r1, b.snr_r2) == (4, 25, 9, 16, 36, 4)
    assert b.rho == pytest.approx(max(36 / 9, 4 / 16))
    # psi1 * SNR1 equals the finite cross term (g1*h21 - g2*h11)^2
    assert b.psi1 * b.snr1 == pytest.approx((6 * 4 - 2 * 2) ** 2)
    assert b.psi2 * b.snr2 == pytest.approx((2 * 3 - 6 * 5) ** 2)


def test_rho_degenerate_ratios():
    assert link_budget(ChannelParams(1, 0, 0, 1, 0, 0)).rho == 0.0
    assert link_budget(ChannelParams(1, 0, 1, 1, 1, 0)).rho == math.inf


def test_regime_and_symmetry():
    p = ChannelParams.symmetric(100, 10, 10, 1.0)
    r = regime(p, 1.0)
    assert r.weak_relay and r.symmetric
    assert not regime(ChannelParams(1, 1, 1, 1, 2, 0), 1.0).weak_relay
    assert regime(ChannelParams(1, 1, 1, 1, 2, 0), 1.0).weak_relay_single


def test_swap_is_involution():
    p = ChannelParams(1, 2, 3, 4, 5, 6, 0.5, 0.7)
    assert swap_users(swap_users(p)) == p
    assert link_budget(swap_users(p)).snr1 == link_budget(p).snr2


@pytest.mark.parametrize("kind", REGIME_KINDS)
def test_sampler_respects_regime(kind):
    chans = sample_channels(3, 300, rho0=2.0, regime_kind=kind)
    for p in chans:
        b = link_budget(p)
        if kind in ("weak_relay", "degraded_broadcast"):
            assert regime(p, 2.0).weak_relay
        if kind == "single_link":
            assert p.c2 == 0 and b.snr_r2 <= 2.0 * b.inr2
        if kind == "degraded_broadcast":
            assert p.c1 <= p.c2
        if kind == "no_relay":
            assert p.g1 == p.g2 == p.c1 == p.c2 == 0


def test_single_link_sampler_reaches_strong_g1():
    ratios = [link_budget(p).snr_r1 / link_budget(p).inr1
              for p in sample_channels(4, 500, regime_kind="single_link")]
    assert max(ratios) > 1e4


def test_sampler_is_index_addressable():
    a = sample_channels(9, 20)
    b = sample_channels(9, 10, start=10)
    assert a[10:] == b
    assert sample_channels(9, 20) == a


def test_sampler_validation():
    with pytest.raises(ValueError):
        sample_channels(1, 5, rho0=1.0, relay_rel_db=(-10, 3))
    with pytest.raises(ValueError):
        sample_channels(1, 5, regime_kind="nope")
    with pytest.raises(ValueError):
        sample_channels(1, 0)


def test_with_capacities():
    p = with_capacities(ChannelParams(1, 1, 1, 1, 0, 0), c2=2.0)
    assert (p.c1, p.c2) == (0.0, 2.0)
    assert np.isfinite(p.c2)
