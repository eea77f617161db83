"""Outer-bound and achievable constraint sets as tagged linear inequalities.

Tags are stable identifiers.  Outer bounds use ``T1.*``, the two-link
achievable region ``T2.*``, the single-link region ``C3.*``, the raw
Han-Kobayashi system ``HK.*`` and the infinite-relay outer region ``INF.*``.

In the outer bounds ``SNR_i * (1 + phi_i^2 * SNR_r(other))`` is written as
``SNR_i + K_i`` with ``K1 = (g1*h21 - g2*h11)^2`` and
``K2 = (g2*h12 - g1*h22)^2``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .channel_model import ChannelParams, link_budget
from .mutual_info import DegenerateChannelError, MIProfile
from .polytope import HalfspaceSystem

__all__ = [
    "LinearConstraint",
    "RatePolytope",
    "outer_constraints",
    "achievable_constraints",
    "achievable_single_link",
    "hk_raw_constraints",
    "achievable_fixed_distribution",
    "infinite_relay_outer",
    "convexify",
    "INFINITE_RELAY_TAGS",
]

RATE_VARS = ("R1", "R2")
HK_VARS = ("S1", "T1", "S2", "T2")

# outer-bound tags that survive unchanged (up to the R1/R2 min) as g -> infinity
INFINITE_RELAY_TAGS = {
    "INF.R1": "T1.R1",
    "INF.R2": "T1.R2",
    "INF.sum.1": "T1.sum.1",
    "INF.sum.2": "T1.sum.2",
    "INF.sum.3": "T1.sum.3",
    "INF.2R1R2": "T1.2R1R2.1",
    "INF.R12R2": "T1.R12R2.1",
}


@dataclass(frozen=True)
class LinearConstraint:
    coeffs: dict
    rhs: float
    tag: str

    def __post_init__(self):
        for k, c in self.coeffs.items():
            if c not in (0, 1, 2):
                raise ValueError(f"coefficient of {k} must be 0, 1 or 2, got {c!r}")
        if not math.isfinite(self.rhs):
            raise ValueError(f"rhs of {self.tag} must be finite, got {self.rhs!r}")

    def direction(self, variables) -> tuple:
        return tuple(self.coeffs.get(v, 0) for v in variables)

    def to_dict(self) -> dict:
        return {"coeffs": {k: v for k, v in self.coeffs.items() if v}, "rhs": self.rhs, "tag": self.tag}


@dataclass(frozen=True)
class RatePolytope:
    variables: tuple
    constraints: tuple

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        for c in self.constraints:
            unknown = set(c.coeffs) - set(self.variables)
            if unknown:
                raise ValueError(f"constraint {c.tag} uses unknown variables {sorted(unknown)}")
        for v in self.variables:
            if not any(c.coeffs.get(v, 0) > 0 for c in self.constraints):
                raise ValueError(f"variable {v} is unbounded")

    def __getitem__(self, tag) -> LinearConstraint:
        for c in self.constraints:
            if c.tag == tag:
                return c
        raise KeyError(tag)

    @property
    def tags(self):
        return [c.tag for c in self.constraints]

    def rhs(self) -> dict:
        return {c.tag: c.rhs for c in self.constraints}

    def to_system(self) -> HalfspaceSystem:
        A = np.array([c.direction(self.variables) for c in self.constraints], dtype=float)
        b = np.array([c.rhs for c in self.constraints], dtype=float)
        return HalfspaceSystem(self.variables, A, b, self.tags)

    def to_dict(self) -> dict:
        return {"variables": list(self.variables),
                "constraints": [c.to_dict() for c in self.constraints]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d) -> "RatePolytope":
        cons = [LinearConstraint(dict(c["coeffs"]), float(c["rhs"]), c["tag"]) for c in d["constraints"]]
        return cls(tuple(d["variables"]), tuple(cons))

    @classmethod
    def from_json(cls, text) -> "RatePolytope":
        return cls.from_dict(json.loads(text))


def _L(x):
    return 0.5 * math.log2(x)


def _poly(variables, rows):
    return RatePolytope(variables, tuple(LinearConstraint(c, float(r), t) for c, r, t in rows))


_R1 = {"R1": 1}
_R2 = {"R2": 1}
_SUM = {"R1": 1, "R2": 1}
_2R1R2 = {"R1": 2, "R2": 1}
_R12R2 = {"R1": 1, "R2": 2}


def _two_r1_r2(S1, S2, I1, I2, Rr1, Rr2, X1, X2, C1, C2):
    """The six weighted bounds with user 1 counted twice."""
    return [
        _L(1 + S1 + I2) + _L(1 + I1 + S2 / (1 + I2)) + _L(1 + S1 / (1 + I1)) + 2 * C1 + C2,
        _L(1 + (S1 + Rr1) / (1 + I1 + Rr1)) + _L(1 + X1 + Rr1 + I2 + Rr2)
        + _L(1 + (X2 + Rr2) / (1 + I2 + Rr2) + I1 + Rr1),
        _L(1 + S1 + I2) + _L(1 + (S1 + Rr1) / (1 + I1))
        + _L(1 + (X2 + Rr2) / (1 + I2) + I1 + Rr1) + C1,
        # relay power Rr2, not S2, in the second term
        _L(1 + (S1 + Rr1) / (1 + I1)) + _L(1 + S2 / (1 + I2 + Rr2) + I1)
        + _L(1 + X1 + Rr1 + I2 + Rr2) + C2,
        _L(1 + S1 + I2) + _L(1 + S1 / (1 + I1 + Rr1))
        + _L(1 + (X2 + Rr2) / (1 + I2) + I1 + Rr1) + 2 * C1,
        _L(1 + S1 + I2) + _L(1 + I1 + S2 / (1 + I2)) + _L(1 + (S1 + Rr1) / (1 + I1)) + C1 + C2,
    ]


def _check_outer_inputs(p):
    if (p.h11 == 0 and p.g2 != 0) or (p.h22 == 0 and p.g1 != 0):
        raise DegenerateChannelError("outer bound needs h11 != 0 (resp. h22) when g2 (resp. g1) != 0")


def outer_constraints(p: ChannelParams) -> RatePolytope:
    """The 26 outer-bound constraints on ``(R1, R2)``."""
    _check_outer_inputs(p)
    b = link_budget(p)
    S1, S2, I1, I2, Rr1, Rr2 = b.snr1, b.snr2, b.inr1, b.inr2, b.snr_r1, b.snr_r2
    C1, C2 = p.c1, p.c2
    X1 = S1 + (p.g1 * p.h21 - p.g2 * p.h11) ** 2
    X2 = S2 + (p.g2 * p.h12 - p.g1 * p.h22) ** 2

    rows = [
        (_R1, _L(1 + S1) + min(C1, _L(1 + Rr1 / (1 + S1))), "T1.R1"),
        (_R2, _L(1 + S2) + min(C2, _L(1 + Rr2 / (1 + S2))), "T1.R2"),
    ]
    sums = [
        _L(1 + S2 + I1) + _L(1 + S1 / (1 + I1)) + C1 + C2,
        _L(1 + S1 + I2) + _L(1 + S2 / (1 + I2)) + C1 + C2,
        _L(1 + I2 + S1 / (1 + I1)) + _L(1 + I1 + S2 / (1 + I2)) + C1 + C2,
        _L(1 + S1 / (1 + I1 + Rr1)) + _L(1 + X2 + Rr2 + I1 + Rr1) + C1,
        _L(1 + S1 + I2) + _L(1 + (S2 + Rr2) / (1 + I2)) + C1,
        _L(1 + S1 / (1 + I1 + Rr1) + I2) + _L(1 + (X2 + Rr2) / (1 + I2) + I1 + Rr1) + C1,
        _L(1 + S2 / (1 + I2 + Rr2)) + _L(1 + X1 + Rr1 + I2 + Rr2) + C2,
        _L(1 + S2 + I1) + _L(1 + (S1 + Rr1) / (1 + I1)) + C2,
        _L(1 + S2 / (1 + I2 + Rr2) + I1) + _L(1 + (X1 + Rr1) / (1 + I1) + I2 + Rr2) + C2,
        _L(1 + (S1 + Rr1) / (1 + I1 + Rr1)) + _L(1 + X2 + Rr2 + I1 + Rr1),
        _L(1 + (S2 + Rr2) / (1 + I2 + Rr2)) + _L(1 + X1 + Rr1 + I2 + Rr2),
        _L(1 + (X1 + Rr1) / (1 + I1 + Rr1) + I2 + Rr2) + _L(1 + (X2 + Rr2) / (1 + I2 + Rr2) + I1 + Rr1),
    ]
    rows += [(_SUM, v, f"T1.sum.{k}") for k, v in enumerate(sums, 1)]
    w1 = _two_r1_r2(S1, S2, I1, I2, Rr1, Rr2, X1, X2, C1, C2)
    w2 = _two_r1_r2(S2, S1, I2, I1, Rr2, Rr1, X2, X1, C2, C1)
    rows += [(_2R1R2, v, f"T1.2R1R2.{k}") for k, v in enumerate(w1, 1)]
    rows += [(_R12R2, v, f"T1.R12R2.{k}") for k, v in enumerate(w2, 1)]
    return _poly(RATE_VARS, rows)


def _eff(c, xi):
    return max(c - xi, 0.0)


def achievable_constraints(mi: MIProfile, c1: float, c2: float) -> RatePolytope:
    """Seven-constraint achievable region for one power split and quantizer."""
    if c1 < 0 or c2 < 0:
        raise ValueError("relay-link capacities must be nonnegative")
    k1, k2 = _eff(c1, mi.xi1), _eff(c2, mi.xi2)
    m = mi
    rows = [
        (_R1, m.d1 + min(k1, m.dd1), "T2.R1"),
        (_R2, m.d2 + min(k2, m.dd2), "T2.R2"),
        (_SUM, m.a1 + m.g2 + min(k1, m.da1) + min(k2, m.dg2), "T2.sum.1"),
        (_SUM, m.a2 + m.g1 + min(k1, m.dg1) + min(k2, m.da2), "T2.sum.2"),
        (_SUM, m.e1 + m.e2 + min(k1, m.de1) + min(k2, m.de2), "T2.sum.3"),
        (_2R1R2, m.a1 + m.g1 + m.e2 + min(k1, m.da1) + min(k1, m.dg1) + min(k2, m.de2), "T2.2R1R2"),
        (_R12R2, m.a2 + m.g2 + m.e1 + min(k2, m.da2) + min(k2, m.dg2) + min(k1, m.de1), "T2.R12R2"),
    ]
    return _poly(RATE_VARS, rows)


def achievable_single_link(mi: MIProfile, c1: float) -> RatePolytope:
    """Achievable region when only the link to receiver 1 exists."""
    if c1 < 0:
        raise ValueError("relay-link capacity must be nonnegative")
    k, m = _eff(c1, mi.xi1), mi
    rows = [
        (_R1, m.d1 + min(k, m.dd1), "C3.R1"),
        (_R2, m.d2, "C3.R2"),
        (_SUM, m.a1 + m.g2 + min(k, m.da1), "C3.sum.1"),
        (_SUM, m.a2 + m.g1 + min(k, m.dg1), "C3.sum.2"),
        (_SUM, m.e1 + m.e2 + min(k, m.de1), "C3.sum.3"),
        (_2R1R2, m.a1 + m.g1 + m.e2 + min(2 * k, k + m.da1, m.da1 + m.dg1), "C3.2R1R2"),
        (_R12R2, m.a2 + m.g2 + m.e1 + min(k, m.de1), "C3.R12R2"),
    ]
    return _poly(RATE_VARS, rows)


def hk_raw_constraints(mi: MIProfile, c1: float, c2: float) -> RatePolytope:
    """Receiver-side decoding constraints on private (S) and common (T) rates."""
    if c1 < 0 or c2 < 0:
        raise ValueError("relay-link capacities must be nonnegative")
    rows = []
    for i, j, c in ((1, 2, c1), (2, 1, c2)):
        u = mi.user(i)
        k = _eff(c, u["xi"])
        S, T, To = f"S{i}", f"T{i}", f"T{j}"
        for name, coeffs in (("a", {S: 1}), ("d", {S: 1, T: 1}),
                             ("e", {S: 1, To: 1}), ("g", {S: 1, T: 1, To: 1})):
            x, dx = u[name], u["d" + name]
            rows.append((coeffs, min(x + k, x + dx), f"HK.rx{i}.{name}"))
    return _poly(HK_VARS, rows)


def achievable_fixed_distribution(mi: MIProfile, c1: float, c2: float) -> RatePolytope:
    """Exact projection of :func:`hk_raw_constraints` onto ``(R1, R2)``.

    The seven stated bounds plus ``R1 <= A1 + E2`` and ``R2 <= A2 + E1``,
    where ``A1 = a1 + min((c1-xi1)+, da1)`` and so on.  The two extra bounds
    only become redundant after a union over input distributions.
    """
    base = achievable_constraints(mi, c1, c2)
    k1, k2 = _eff(c1, mi.xi1), _eff(c2, mi.xi2)
    extra = [
        LinearConstraint(dict(_R1), mi.a1 + min(k1, mi.da1) + mi.e2 + min(k2, mi.de2), "FD.R1"),
        LinearConstraint(dict(_R2), mi.a2 + min(k2, mi.da2) + mi.e1 + min(k1, mi.de1), "FD.R2"),
    ]
    return RatePolytope(RATE_VARS, base.constraints + tuple(extra))


def infinite_relay_outer(p: ChannelParams) -> RatePolytope:
    """Outer region in the limit of unbounded relay gains."""
    b = link_budget(p)
    S1, S2, I1, I2 = b.snr1, b.snr2, b.inr1, b.inr2
    C1, C2 = p.c1, p.c2
    rows = [
        (_R1, _L(1 + S1) + C1, "INF.R1"),
        (_R2, _L(1 + S2) + C2, "INF.R2"),
        (_SUM, _L(1 + S2 + I1) + _L(1 + S1 / (1 + I1)) + C1 + C2, "INF.sum.1"),
        (_SUM, _L(1 + S1 + I2) + _L(1 + S2 / (1 + I2)) + C1 + C2, "INF.sum.2"),
        (_SUM, _L(1 + I2 + S1 / (1 + I1)) + _L(1 + I1 + S2 / (1 + I2)) + C1 + C2, "INF.sum.3"),
        (_2R1R2, _L(1 + S1 + I2) + _L(1 + I1 + S2 / (1 + I2)) + _L(1 + S1 / (1 + I1)) + 2 * C1 + C2,
         "INF.2R1R2"),
        (_R12R2, _L(1 + S2 + I1) + _L(1 + I2 + S1 / (1 + I1)) + _L(1 + S2 / (1 + I2)) + C1 + 2 * C2,
         "INF.R12R2"),
    ]
    return _poly(RATE_VARS, rows)


def convexify(poly: RatePolytope) -> RatePolytope:
    """Time-sharing hull.  A halfspace intersection is already convex, so this is the identity."""
    return poly
