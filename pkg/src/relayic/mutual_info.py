"""Gaussian mutual-information terms of the hash-and-forward achievable region.

Inputs are superposition-coded, ``X_i = U_i + W_i`` with private power
``p_ip`` and common power ``1 - p_ip``; the relay quantizes ``Y_R`` with
Gaussian noise of variance ``q_i`` for receiver ``i``.  Every quantity is in
bits per channel use.

Cross terms ``phi1^2 * SNR_r2 * (.)`` are evaluated through
``psi1 = (g1*h21/h11 - g2)^2`` so that ``g2 = 0`` needs no special case.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, fields

from .channel_model import ChannelParams, link_budget

__all__ = [
    "DegenerateChannelError",
    "PowerSplit",
    "QuantLevels",
    "MIProfile",
    "Lemma1Bounds",
    "private_powers_etw",
    "private_powers_simo",
    "q_default",
    "mi_profile",
    "lemma1_bounds",
    "lemma1_exact",
]

_TERMS = ("a", "d", "e", "g")


class DegenerateChannelError(ValueError):
    """A direct gain is zero, so the relay cross terms are undefined."""


@dataclass(frozen=True)
class PowerSplit:
    p1p: float
    p2p: float

    def __post_init__(self):
        for name in ("p1p", "p2p"):
            v = float(getattr(self, name))
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v!r}")
            object.__setattr__(self, name, v)

    def swap(self) -> "PowerSplit":
        return PowerSplit(self.p2p, self.p1p)


@dataclass(frozen=True)
class QuantLevels:
    q1: float
    q2: float

    def __post_init__(self):
        for name in ("q1", "q2"):
            v = float(getattr(self, name))
            if not v > 0:
                raise ValueError(f"{name} must be positive, got {v!r}")
            object.__setattr__(self, name, v)

    def swap(self) -> "QuantLevels":
        return QuantLevels(self.q2, self.q1)


@dataclass(frozen=True)
class MIProfile:
    """Mutual-information terms for both users.

    ``da1`` etc. are the relay increments; ``xi1`` is the rate needed to
    describe the quantization noise.
    """

    a1: float
    d1: float
    e1: float
    g1: float
    da1: float
    dd1: float
    de1: float
    dg1: float
    xi1: float
    a2: float
    d2: float
    e2: float
    g2: float
    da2: float
    dd2: float
    de2: float
    dg2: float
    xi2: float

    def user(self, i: int) -> dict:
        """Fields of user ``i`` with the index suffix stripped."""
        if i not in (1, 2):
            raise ValueError("user index must be 1 or 2")
        s = str(i)
        return {f.name[:-1]: getattr(self, f.name) for f in fields(self) if f.name.endswith(s)}

    def swap(self) -> "MIProfile":
        d = {}
        for f in fields(self):
            other = f.name[:-1] + ("2" if f.name.endswith("1") else "1")
            d[f.name] = getattr(self, other)
        return MIProfile(**d)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def private_powers_etw(p: ChannelParams) -> PowerSplit:
    """Private power at the noise level of the interfered receiver."""
    return PowerSplit(_min_inverse(p.h12**2), _min_inverse(p.h21**2))


def private_powers_simo(p: ChannelParams) -> PowerSplit:
    """Private power at the effective noise level of the two-antenna output."""
    return PowerSplit(_min_inverse(p.g1**2 + p.h12**2), _min_inverse(p.g2**2 + p.h21**2))


def _min_inverse(x):
    return 1.0 if x <= 1.0 else 1.0 / x


def q_default(rho: float) -> QuantLevels:
    """Quantization level equalizing the two gap terms."""
    rho = float(rho)
    if not (math.isfinite(rho) and rho >= 0):
        raise ValueError(f"rho must be finite and >= 0, got {rho!r}")
    q = (math.sqrt(rho * rho + 16 * rho + 16) - rho) / 4
    return QuantLevels(q, q)


def _half_log2(x):
    # arguments are ratios >= 1 in exact arithmetic
    if x < 1.0 - 1e-12:
        raise ArithmeticError(f"log argument {x!r} below 1")
    return 0.5 * math.log2(max(x, 1.0))


def _user_terms(snr, inr_other, snr_r, snr_r_other, psi, pp, pp_other, q):
    """Terms for the user whose direct SNR is ``snr``.

    ``inr_other``/``snr_r_other``/``pp_other`` belong to the interfering user.
    """
    snr_p = snr * pp
    inr_op = inr_other * pp_other
    snr_rp = snr_r * pp
    snr_rop = snr_r_other * pp_other
    den = (q + 1) * (1 + inr_op) + snr_rop

    # (direct power seen, interference power seen, relay-own, relay-other, cross)
    cases = {
        "a": (snr_p, inr_op, snr_rp, snr_rop, pp_other * psi * snr_p),
        "d": (snr, inr_op, snr_r, snr_rop, pp_other * psi * snr),
        "e": (snr_p, inr_other, snr_rp, snr_r_other, psi * snr_p),
        "g": (snr, inr_other, snr_r, snr_r_other, psi * snr),
    }
    out = {}
    for name, (s, i, r_own, r_oth, cross) in cases.items():
        base_num = 1 + s + i
        base = base_num / (1 + inr_op)
        num = (q + 1) * base_num + r_own + r_oth + cross
        out[name] = _half_log2(base)
        out["d" + name] = max(_half_log2(num * (1 + inr_op) / (den * base_num)), 0.0)
    out["xi"] = 0.5 * math.log2(1 + (1 + snr_rop / (1 + inr_op)) / q)
    return out


def mi_profile(p: ChannelParams, split: PowerSplit, q: QuantLevels) -> MIProfile:
    if p.h11 == 0 or p.h22 == 0:
        raise DegenerateChannelError("mutual-information terms need h11 != 0 and h22 != 0")
    b = link_budget(p)
    u1 = _user_terms(b.snr1, b.inr2, b.snr_r1, b.snr_r2, b.psi1, split.p1p, split.p2p, q.q1)
    u2 = _user_terms(b.snr2, b.inr1, b.snr_r2, b.snr_r1, b.psi2, split.p2p, split.p1p, q.q2)
    d = {k + "1": v for k, v in u1.items()}
    d.update({k + "2": v for k, v in u2.items()})
    return MIProfile(**d)


@dataclass(frozen=True)
class Lemma1Bounds:
    """Lower bounds on ``x`` and ``x + dx`` and the upper bound on ``xi``.

    Keys follow ``a1``, ``a1_da1``, ..., ``g2_dg2``, ``xi1_ub``, ``xi2_ub``.
    """

    values: dict

    def __getitem__(self, key):
        return self.values[key]


def lemma1_bounds(p: ChannelParams, q: QuantLevels, rho: float) -> Lemma1Bounds:
    """Closed-form bounds valid for the ETW split when ``g_i^2 <= rho * INR``.

    The values are returned for any input; they only bound the exact terms
    inside the weak-relay regime.
    """
    from .gap_analysis import alpha_fn, beta_fn

    b = link_budget(p)
    hl = lambda x: 0.5 * math.log2(x)  # noqa: E731
    vals = {}
    for i, (snr, inr, inr_o, sr, sr_o, psi, qi) in {
        1: (b.snr1, b.inr1, b.inr2, b.snr_r1, b.snr_r2, b.psi1, q.q1),
        2: (b.snr2, b.inr2, b.inr1, b.snr_r2, b.snr_r1, b.psi2, q.q2),
    }.items():
        al = alpha_fn(qi, rho)
        # SNR_i * (1 + phi_i^2 * SNR_r(other)) == SNR_i + SNR_i * psi_i
        cross = snr + snr * psi
        vals[f"a{i}"] = hl(1 + snr / (1 + inr)) - 0.5
        vals[f"a{i}_da{i}"] = hl(1 + (snr + sr) / (1 + inr)) - al
        vals[f"d{i}"] = hl(1 + snr) - 0.5
        vals[f"d{i}_dd{i}"] = hl(1 + snr + sr) - al
        vals[f"e{i}"] = hl(1 + snr / (1 + inr) + inr_o) - 0.5
        vals[f"e{i}_de{i}"] = hl(1 + (cross + sr) / (1 + inr) + inr_o + sr_o) - al
        vals[f"g{i}"] = hl(1 + snr + inr_o) - 0.5
        vals[f"g{i}_dg{i}"] = hl(1 + cross + sr + inr_o + sr_o) - al
        vals[f"xi{i}_ub"] = beta_fn(qi, rho) - 0.5
    return Lemma1Bounds(vals)


def lemma1_exact(mi: MIProfile) -> dict:
    """Exact values keyed like :class:`Lemma1Bounds`."""
    out = {}
    for i in (1, 2):
        u = mi.user(i)
        for t in _TERMS:
            out[f"{t}{i}"] = u[t]
            out[f"{t}{i}_d{t}{i}"] = u[t] + u["d" + t]
        out[f"xi{i}_ub"] = u["xi"]
    return out
