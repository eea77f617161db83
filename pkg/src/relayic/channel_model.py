"""Channel instances, link budgets and regime predicates.

All gains are real amplitudes with unit input power and unit noise variance.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, replace

import numpy as np

__all__ = [
    "ChannelParams",
    "LinkBudget",
    "RegimeReport",
    "link_budget",
    "regime",
    "sample_channels",
    "swap_users",
    "REGIME_KINDS",
]

REGIME_KINDS = ("weak_relay", "degraded_broadcast", "single_link", "unrestricted", "no_relay")


@dataclass(frozen=True)
class ChannelParams:
    """Six real gains plus the two relay-link capacities (bits/channel use).

    ``hij`` is the gain from transmitter i to receiver j, ``gi`` the gain from
    transmitter i to the relay.
    """

    h11: float
    h12: float
    h21: float
    h22: float
    g1: float
    g2: float
    c1: float = 0.0
    c2: float = 0.0

    def __post_init__(self):
        for name in ("h11", "h12", "h21", "h22", "g1", "g2"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"gain {name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)
        for name in ("c1", "c2"):
            v = float(getattr(self, name))
            if math.isnan(v) or v < 0:
                raise ValueError(f"capacity {name} must be >= 0, got {v!r}")
            object.__setattr__(self, name, v)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        d = {k: ("inf" if math.isinf(v) else v) for k, v in self.to_dict().items()}
        return json.dumps(d)

    @classmethod
    def from_dict(cls, d: dict) -> "ChannelParams":
        keys = ("h11", "h12", "h21", "h22", "g1", "g2", "c1", "c2")
        missing = [k for k in keys[:6] if k not in d]
        if missing:
            raise ValueError(f"missing channel keys: {missing}")
        unknown = set(d) - set(keys)
        if unknown:
            raise ValueError(f"unknown channel keys: {sorted(unknown)}")
        return cls(**{k: float(d[k]) for k in keys if k in d})

    @classmethod
    def from_json(cls, text: str) -> "ChannelParams":
        return cls.from_dict(json.loads(text))

    @classmethod
    def symmetric(cls, snr, inr, snr_r=0.0, c=0.0) -> "ChannelParams":
        """Symmetric channel from power ratios (all gains nonnegative)."""
        hd, hc, g = math.sqrt(snr), math.sqrt(inr), math.sqrt(snr_r)
        return cls(hd, hc, hc, hd, g, g, c, c)


@dataclass(frozen=True)
class LinkBudget:
    snr1: float
    snr2: float
    inr1: float
    inr2: float
    snr_r1: float
    snr_r2: float
    rho: float
    # psi1 = (g1*h21/h11 - g2)^2, the finite form of phi1^2 * SNR_r2
    psi1: float
    psi2: float


@dataclass(frozen=True)
class RegimeReport:
    weak_relay: bool
    weak_relay_single: bool
    symmetric: bool
    rho0: float


def _ratio(num, den):
    if den == 0.0:
        return 0.0 if num == 0.0 else math.inf
    return num / den


def link_budget(p: ChannelParams) -> LinkBudget:
    rho = max(_ratio(p.g1**2, p.h12**2), _ratio(p.g2**2, p.h21**2))
    psi1 = (p.g1 * p.h21 / p.h11 - p.g2) ** 2 if p.h11 != 0 else math.nan
    psi2 = (p.g2 * p.h12 / p.h22 - p.g1) ** 2 if p.h22 != 0 else math.nan
    return LinkBudget(
        snr1=p.h11**2,
        snr2=p.h22**2,
        inr1=p.h12**2,
        inr2=p.h21**2,
        snr_r1=p.g1**2,
        snr_r2=p.g2**2,
        rho=rho,
        psi1=psi1,
        psi2=psi2,
    )


def regime(p: ChannelParams, rho0: float) -> RegimeReport:
    if not rho0 > 0:
        raise ValueError("rho0 must be positive")
    b = link_budget(p)
    weak2 = b.snr_r2 <= rho0 * b.inr2
    weak1 = b.snr_r1 <= rho0 * b.inr1
    sym = (b.snr1 == b.snr2 and b.inr1 == b.inr2
           and b.snr_r1 == b.snr_r2 and p.c1 == p.c2)
    return RegimeReport(weak_relay=weak1 and weak2, weak_relay_single=weak2,
                        symmetric=sym, rho0=rho0)


def swap_users(p: ChannelParams) -> ChannelParams:
    """Relabel users 1 and 2."""
    return ChannelParams(p.h22, p.h21, p.h12, p.h11, p.g2, p.g1, p.c2, p.c1)


def _sample_rng(seed: int, index: int) -> np.random.Generator:
    # one stream per (seed, index): disjoint index ranges can be drawn in parallel
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(index)]))


def _signed_gain(rng, power):
    return math.copysign(math.sqrt(power), rng.random() - 0.5)


def _clip_weak(g, h, rho0):
    # the dB round trip may overshoot g^2 <= rho0*h^2 by an ulp
    while g * g > rho0 * h * h:
        g = math.nextafter(g, 0.0)
    return g


def sample_channels(seed, count, rho0=1.0, regime_kind="weak_relay",
                    snr_range=(0.0, 60.0), c_range=(0.0, 5.0),
                    relay_rel_db=None, start=0):
    """Draw ``count`` channels satisfying the requested regime.

    Direct and cross power ratios are log-uniform over ``snr_range`` (dB) with
    random signs.  Relay powers are drawn relative to the matching cross link:
    ``g1^2 = h12^2 * 10**(x/10)`` with ``x`` uniform over ``relay_rel_db``.
    For weak-relay kinds the upper end defaults to ``10*log10(rho0)`` and may
    not exceed it; for ``single_link`` only ``g2`` is constrained and ``g1``
    ranges up to 60 dB above ``h12``.

    Regime kinds: ``weak_relay``, ``degraded_broadcast`` (weak relay with
    ``c1 <= c2``), ``single_link`` (``c2 = 0``), ``unrestricted`` and
    ``no_relay`` (``g = 0``, ``c = 0``).  Sample ``i`` depends only on
    ``(seed, start + i)``.
    """
    if regime_kind not in REGIME_KINDS:
        raise ValueError(f"unknown regime kind {regime_kind!r}")
    if int(count) < 1:
        raise ValueError("count must be >= 1")
    lo, hi = map(float, snr_range)
    if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
        raise ValueError("snr_range must be a finite interval (lo <= hi) in dB")
    clo, chi = map(float, c_range)
    if not (0 <= clo <= chi):
        raise ValueError("c_range must satisfy 0 <= lo <= hi")
    if not rho0 > 0:
        raise ValueError("rho0 must be positive")

    cap_db = 10 * math.log10(rho0)
    span = 60.0
    if relay_rel_db is None:
        weak_rel = (cap_db - span, cap_db)
        free_rel = (-span, span)
    else:
        rlo, rhi = map(float, relay_rel_db)
        if rlo > rhi:
            raise ValueError("relay_rel_db must satisfy lo <= hi")
        if regime_kind in ("weak_relay", "degraded_broadcast", "single_link") and rhi > cap_db + 1e-12:
            raise ValueError(
                f"relay_rel_db upper end {rhi} dB exceeds the weak-relay cap "
                f"10*log10(rho0) = {cap_db:.6g} dB")
        weak_rel = free_rel = (rlo, rhi)

    out = []
    for i in range(int(count)):
        rng = _sample_rng(seed, start + i)
        powers = 10 ** (rng.uniform(lo, hi, size=4) / 10)
        h11, h12, h21, h22 = (_signed_gain(rng, x) for x in powers)
        c1, c2 = rng.uniform(clo, chi, size=2)
        if regime_kind == "no_relay":
            g1 = g2 = 0.0
            c1 = c2 = 0.0
        else:
            if regime_kind == "unrestricted":
                rel1, rel2 = free_rel, free_rel
            elif regime_kind == "single_link":
                rel1 = (-span, span)
                rel2 = weak_rel
            else:
                rel1 = rel2 = weak_rel
            x1, x2 = rng.uniform(rel1[0], rel1[1]), rng.uniform(rel2[0], rel2[1])
            g1 = _signed_gain(rng, h12**2 * 10 ** (x1 / 10))
            g2 = _signed_gain(rng, h21**2 * 10 ** (x2 / 10))
            if regime_kind in ("weak_relay", "degraded_broadcast"):
                g1 = _clip_weak(g1, h12, rho0)
            if regime_kind != "unrestricted":
                g2 = _clip_weak(g2, h21, rho0)
            if regime_kind == "single_link":
                c2 = 0.0
            elif regime_kind == "degraded_broadcast":
                c1, c2 = sorted((c1, c2))
        out.append(ChannelParams(h11, h12, h21, h22, g1, g2, float(c1), float(c2)))
    return out


def with_capacities(p: ChannelParams, c1=None, c2=None) -> ChannelParams:
    return replace(p, c1=p.c1 if c1 is None else c1, c2=p.c2 if c2 is None else c2)
