import math

import pytest
from hypothesis import given, settings, strategies as st

from oracles import gaussian_terms
from relayic.channel_model import ChannelParams, sample_channels, swap_users
from relayic.gap_analysis import alpha_fn, beta_fn
from relayic.mutual_info import (DegenerateChannelError, MIProfile, PowerSplit, QuantLevels,
                                 lemma1_bounds, lemma1_exact, mi_profile, private_powers_etw,
                                 private_powers_simo, q_default)


def test_etw_and_simo_splits():
    p = ChannelParams(10, 4, 0.5, 10, 3, 1)
    assert private_powers_etw(p) == PowerSplit(1 / 16, 1.0)
    assert private_powers_simo(p) == PowerSplit(1 / 25, 1 / 1.25)


def test_q_default_balances_gap_functions():
    for rho in (0.0, 0.5, 1.0, 2.0, 4.0):
        q = q_default(rho).q1
        assert 2 * q * q + rho * q - 2 * (1 + rho) == pytest.approx(0, abs=1e-12)
        assert alpha_fn(q, rho) == pytest.approx(beta_fn(q, rho), abs=1e-12)
    assert q_default(1.0).q1 == pytest.approx((math.sqrt(33) - 1) / 4, abs=1e-12)
    with pytest.raises(ValueError):
        q_default(-1)


def test_plain_unit_channel_value():
    p = ChannelParams(1, 1, 1, 1, 0, 0)
    mi = mi_profile(p, private_powers_etw(p), q_default(1.0))
    assert mi.a1 == pytest.approx(0.5 * math.log2(1.5), abs=1e-12)
    assert mi.da1 == mi.dg1 == 0.0


def test_degenerate_direct_gain():
    with pytest.raises(DegenerateChannelError):
        mi_profile(ChannelParams(0, 1, 1, 1, 1, 1), PowerSplit(1, 1), QuantLevels(1, 1))


@pytest.mark.parametrize("kind", ["weak_relay", "unrestricted", "single_link", "no_relay"])
def test_closed_forms_match_logdet_oracle(kind):
    for p in sample_channels(17, 200, regime_kind=kind, snr_range=(0, 40)):
        for split in (private_powers_etw(p), private_powers_simo(p), PowerSplit(0.3, 0.8)):
            q = QuantLevels(0.7, 2.5)
            exact = gaussian_terms(p, split.p1p, split.p2p, q.q1, q.q2)
            mi = mi_profile(p, split, q).to_dict()
            for k, v in mi.items():
                assert v == pytest.approx(exact[k], abs=1e-8), k


def test_relay_increment_ordering():
    # da <= dg is what lets the single-link weighted bound use a three-way min
    for p in sample_channels(5, 500, regime_kind="unrestricted"):
        mi = mi_profile(p, private_powers_etw(p), q_default(1.0))
        assert mi.da1 <= mi.dg1 + 1e-12 and mi.da2 <= mi.dg2 + 1e-12


def test_swap_symmetry():
    p = ChannelParams(3.1, 1.2, -0.7, 2.2, 0.4, -1.1, 1, 2)
    s, q = private_powers_etw(p), QuantLevels(1.3, 0.6)
    a = mi_profile(p, s, q)
    b = mi_profile(swap_users(p), s.swap(), q.swap())
    for k, v in a.swap().to_dict().items():
        assert v == pytest.approx(getattr(b, k), abs=1e-12)


def test_profile_json():
    p = ChannelParams(3, 1, 1, 3, 0.5, 0.5)
    mi = mi_profile(p, private_powers_etw(p), q_default(1.0))
    assert MIProfile(**__import__("json").loads(mi.to_json())) == mi
    assert set(mi.user(1)) == {"a", "d", "e", "g", "da", "dd", "de", "dg", "xi"}


@pytest.mark.parametrize("rho0", [1.0, 4.0])
def test_lemma1_holds_in_weak_relay_regime(rho0):
    q = q_default(rho0)
    for p in sample_channels(23, 1000, rho0=rho0):
        exact = lemma1_exact(mi_profile(p, private_powers_etw(p), q))
        lb = lemma1_bounds(p, q, rho0).values
        for k, v in lb.items():
            if k.endswith("_ub"):
                assert exact[k] <= v + 1e-9, k
            else:
                assert exact[k] >= v - 1e-9, k


gain = st.floats(min_value=0.05, max_value=50.0)


@settings(max_examples=200, deadline=None)
@given(gain, gain, gain, gain, st.floats(0, 1), st.floats(0, 1),
       st.floats(0.01, 1), st.floats(0.01, 1))
def test_terms_nonnegative_and_nested(h11, h12, h21, h22, u1, u2, s1, s2):
    p = ChannelParams(h11, h12, h21, h22, u1 * h12, u2 * h21)
    mi = mi_profile(p, PowerSplit(s1, s2), q_default(1.0))
    for i in (1, 2):
        u = mi.user(i)
        assert min(u.values()) >= 0
        # conditioning on more common information can only shrink a term
        assert u["a"] <= u["d"] + 1e-12 and u["e"] <= u["g"] + 1e-12
