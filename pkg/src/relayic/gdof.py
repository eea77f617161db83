"""High-SNR sum-rate formulas in generalized degrees of freedom.

``alpha`` is the interference exponent, ``beta`` the source-to-relay
exponent and ``kappa`` the relay-link rate normalized by ``1/2 log SNR``.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from . import polytope
from .channel_model import ChannelParams
from .mutual_info import mi_profile, private_powers_etw, q_default
from .regions import achievable_constraints, achievable_single_link

__all__ = [
    "GdofRegimeError",
    "GdofQuery",
    "MacRegion",
    "gdof_sum_symmetric",
    "gdof_sum_alpha_eq_beta",
    "table1_gain",
    "table2_gain",
    "table_intervals",
    "gdof_single",
    "d_sr",
    "d_if",
    "d_bl",
    "relaying_mode",
    "det_relay_rate",
    "common_mac_region",
    "common_intersection_gain",
    "estimate_gdof_numeric",
    "fig5_csv",
    "fig9_csv",
    "fig10_csv",
]


class GdofRegimeError(ValueError):
    """Exponents outside the weak-relay GDoF regime."""


@dataclass(frozen=True)
class GdofQuery:
    alpha: float
    beta: float = 0.0
    kappa: float = 0.0
    beta1: float | None = None
    beta2: float | None = None
    kappa1: float | None = None

    def __post_init__(self):
        for name in ("alpha", "beta", "kappa", "beta1", "beta2", "kappa1"):
            v = getattr(self, name)
            if v is not None and not (math.isfinite(v) and v >= 0):
                raise ValueError(f"{name} must be finite and >= 0, got {v!r}")


def gdof_sum_symmetric(q: GdofQuery) -> float:
    a, b, k = q.alpha, q.beta, q.kappa
    if b > a:
        raise GdofRegimeError("weak-relay regime needs beta <= alpha")
    if a < 1:
        return min(2 - a + min(b, k), 2 * max(a, 1 - a) + 2 * k, 2 * max(a, 1 + b - a))
    return min(a + k, a + b, 2 * (1 + k), 2 * max(1.0, b))


def gdof_sum_alpha_eq_beta(alpha, kappa) -> float:
    a, k = alpha, kappa
    if a < 1:
        return min(2 + k - a, 2 * max(a, 1 - a) + 2 * k, 2.0)
    return min(a + k, 2 * (1 + k), 2 * a)


def table_intervals(kappa):
    """The six alpha intervals shared by both gain tables."""
    k = kappa
    return [(0.0, k), (k, (2 - k) / 3), ((2 - k) / 3, 2 / 3), (2 / 3, 2.0), (2.0, 2 + k), (2 + k, math.inf)]


def _table(alpha, kappa, pieces):
    for (lo, hi), f in zip(table_intervals(kappa), pieces):
        if alpha <= hi:
            return f(alpha, kappa)
    raise AssertionError("unreachable")


def table1_gain(alpha, kappa) -> float:
    if not 0 <= kappa <= 0.5:
        raise ValueError("the gain table assumes 0 <= kappa <= 1/2")
    return _table(alpha, kappa, [
        lambda a, k: 2 * a,
        lambda a, k: 2 * k,
        lambda a, k: 2 - 3 * a + k,
        lambda a, k: k,
        lambda a, k: a + k - 2,
        lambda a, k: 2 * k,
    ])


def table2_gain(alpha, kappa) -> float:
    if not 0 <= kappa <= 0.5:
        raise ValueError("the gain table assumes 0 <= kappa <= 1/2")
    return _table(alpha, kappa, [
        lambda a, k: a,
        lambda a, k: k,
        lambda a, k: 2 - 3 * a,
        lambda a, k: 0.0,
        lambda a, k: a - 2,
        lambda a, k: k,
    ])


def _single_form(alpha, beta1, kappa1, middle):
    a = alpha
    m = max(a, 1 - a)
    if beta1 <= 1:
        return min(2 - a, 2 * m + kappa1, m + middle)
    return min(2 - a + kappa1, 2 * m + kappa1, 1 + beta1 - a)


def gdof_single(alpha, beta1, beta2, kappa1) -> float:
    """Sum GDoF with only the relay link to receiver 1."""
    if beta2 > alpha:
        raise GdofRegimeError("single-link weak-relay regime needs beta2 <= alpha")
    if alpha >= 1:
        return min(alpha, 2 + kappa1)
    return _single_form(alpha, beta1, kappa1, max(beta1, 1 + beta2 - alpha, alpha))


def d_sr(alpha, beta1, kappa1) -> float:
    """Signal relaying only (``g2 = 0``)."""
    return _single_form(alpha, beta1, kappa1, max(beta1, 1 - alpha, alpha))


def d_if(alpha, beta2, kappa1) -> float:
    """Interference forwarding only (``g1 = 0``)."""
    a = alpha
    m = max(a, 1 - a)
    return min(2 - a, 2 * m + kappa1, m + max(1 + beta2 - a, a))


def d_bl(alpha) -> float:
    """Relay-free baseline, meaningful for ``alpha <= 1``."""
    return min(2 - alpha, 2 * max(alpha, 1 - alpha))


def relaying_mode(alpha, beta1, beta2, kappa1):
    """Which single-source relaying matches the sum GDoF, and the threshold ``beta1*``."""
    thr = 1 + beta2 - alpha
    d = gdof_single(alpha, beta1, beta2, kappa1)
    if beta1 < thr:
        mode = "interference_forwarding"
    elif beta1 > thr:
        mode = "signal_relaying"
    else:
        mode = "tie"
    if alpha < 1:
        if mode != "signal_relaying" and abs(d - d_if(alpha, beta2, kappa1)) > 1e-12:
            raise AssertionError("sum GDoF differs from interference forwarding below threshold")
        if mode != "interference_forwarding" and abs(d - d_sr(alpha, beta1, kappa1)) > 1e-12:
            raise AssertionError("sum GDoF differs from signal relaying above threshold")
    return mode, thr


def det_relay_rate(alpha, kappa) -> float:
    return min(1.0, 1 - alpha + kappa)


@dataclass(frozen=True)
class MacRegion:
    """``Rw1 <= w1``, ``Rw2 <= w2``, ``Rw1 + Rw2 <= s`` in GDoF units."""

    w1: float
    w2: float
    s: float

    def system(self):
        return polytope.HalfspaceSystem(("Rw1", "Rw2"), [[1, 0], [0, 1], [1, 1]],
                                        [self.w1, self.w2, self.s], ["Rw1", "Rw2", "sum"])


def common_mac_region(alpha, kappa, receiver=1) -> MacRegion:
    """Common-message region at one receiver under the two-stage scheme."""
    a, k = alpha, kappa
    if a <= 1:
        own, other, s = a, min(a, k + max(2 * a - 1, 0.0)), a + min(a, k)
    else:
        own, other, s = min(a, 1 + k), a, a + k
    if receiver == 1:
        return MacRegion(own, other, s)
    if receiver == 2:
        return MacRegion(other, own, s)
    raise ValueError("receiver must be 1 or 2")


def common_intersection_gain(alpha, kappa) -> float:
    """Sum-GDoF gain read off the intersection of the two common-message regions."""
    r1, r2 = common_mac_region(alpha, kappa, 1), common_mac_region(alpha, kappa, 2)
    inter = polytope.HalfspaceSystem(("Rw1", "Rw2"), np.vstack([r1.system().A, r2.system().A]),
                                     np.concatenate([r1.system().b, r2.system().b]))
    common = polytope.support(inter, (1.0, 1.0))
    return common + 2 * max(0.0, 1 - alpha) - gdof_sum_alpha_eq_beta(alpha, 0.0)


def _symmetric_channel(snr, q: GdofQuery, mode):
    unit = 0.5 * math.log2(snr)
    if mode == "two_links":
        return ChannelParams.symmetric(snr, snr**q.alpha, snr**q.beta, q.kappa * unit)
    b1 = q.beta1 if q.beta1 is not None else q.beta
    b2 = q.beta2 if q.beta2 is not None else q.beta
    k1 = q.kappa1 if q.kappa1 is not None else q.kappa
    hd, hc = math.sqrt(snr), math.sqrt(snr**q.alpha)
    return ChannelParams(hd, hc, hc, hd, math.sqrt(snr**b1), math.sqrt(snr**b2), k1 * unit, 0.0)


def estimate_gdof_numeric(q: GdofQuery, snr_db: float, mode: str = "two_links") -> float:
    """Achievable sum rate over ``1/2 log2 SNR`` for the symmetric channel at ``snr_db``."""
    if mode not in ("two_links", "single_link"):
        raise ValueError(f"unknown mode {mode!r}")
    snr = 10 ** (snr_db / 10)
    p = _symmetric_channel(snr, q, mode)
    mi = mi_profile(p, private_powers_etw(p), q_default(1.0))
    if mode == "two_links":
        poly = achievable_constraints(mi, p.c1, p.c2)
    else:
        poly = achievable_single_link(mi, p.c1)
    return polytope.support(poly, (1.0, 1.0)) / (0.5 * math.log2(snr))


def _fmt(x):
    return f"{x:.12g}"


def fig5_csv(kappas=(0.0, 0.2, 0.5, 1.0), alphas=None) -> str:
    """Sum GDoF (alpha = beta) and gain over kappa = 0, per kappa."""
    alphas = np.round(np.linspace(0, 3, 301), 12) if alphas is None else alphas
    buf = io.StringIO()
    buf.write("kappa,alpha,d_sum,gain\n")
    for k in kappas:
        for a in alphas:
            if a == 1.0:
                continue
            d = gdof_sum_alpha_eq_beta(a, k)
            buf.write(f"{_fmt(k)},{_fmt(a)},{_fmt(d)},{_fmt(d - gdof_sum_alpha_eq_beta(a, 0.0))}\n")
    return buf.getvalue()


def fig9_csv(alpha=0.5, beta2=0.2, kappa1=0.5, betas=None) -> str:
    betas = np.round(np.linspace(0, 1.5, 151), 12) if betas is None else betas
    buf = io.StringIO()
    buf.write("beta1,d_sum,d_sr,d_if,d_bl\n")
    for b1 in betas:
        row = (b1, gdof_single(alpha, b1, beta2, kappa1), d_sr(alpha, b1, kappa1),
               d_if(alpha, beta2, kappa1), d_bl(alpha))
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def fig10_csv(kappas=(0.2, 0.5), alphas=None) -> str:
    """Single-link sum GDoF (alpha = beta1 = beta2) and table gain, per kappa."""
    alphas = np.round(np.linspace(0, 3, 301), 12) if alphas is None else alphas
    buf = io.StringIO()
    buf.write("kappa,alpha,d_sum,gain\n")
    for k in kappas:
        for a in alphas:
            if a == 1.0:
                continue
            d = gdof_single(a, a, a, k)
            buf.write(f"{_fmt(k)},{_fmt(a)},{_fmt(d)},{_fmt(d - gdof_single(a, a, a, 0.0))}\n")
    return buf.getvalue()
