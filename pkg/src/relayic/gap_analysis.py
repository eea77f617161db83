"""Constant-gap machinery: gap functions, the gap budget and per-channel reports."""

from __future__ import annotations

import io
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import polytope
from .channel_model import ChannelParams, link_budget, regime, sample_channels
from .mutual_info import (MIProfile, PowerSplit, QuantLevels, mi_profile,
                          private_powers_etw, q_default)
from .regions import (achievable_constraints, achievable_single_link,
                      outer_constraints)

__all__ = [
    "RegimeViolation",
    "GapBudget",
    "GapReport",
    "alpha_fn",
    "beta_fn",
    "gap_budget",
    "gap_report",
    "appendix_pairing",
    "gap_scan",
    "gap_scan_csv",
    "DIRECTIONS",
]

# direction tag -> (vector, multiple of delta)
DIRECTIONS = {
    "R1": ((1.0, 0.0), 1),
    "R2": ((0.0, 1.0), 1),
    "sum": ((1.0, 1.0), 2),
    "2R1+R2": ((2.0, 1.0), 3),
    "R1+2R2": ((1.0, 2.0), 3),
}
TOL = 1e-9


class RegimeViolation(ValueError):
    """The channel is outside the regime the requested gap claim covers."""


def alpha_fn(x, rho):
    return 0.5 * math.log2(2 * x + 2 + rho)


def beta_fn(x, rho):
    return 0.5 + 0.5 * math.log2(1 + (1 + rho) / x)


@dataclass(frozen=True)
class GapBudget:
    rho: float
    q_star: float
    delta: float
    per_direction: dict

    def to_dict(self):
        return asdict(self)


def gap_budget(rho) -> GapBudget:
    rho = float(rho)
    q = q_default(rho).q1
    delta = 0.5 * math.log2(2 + (rho + math.sqrt(rho * rho + 16 * rho + 16)) / 2)
    per = {k: m * delta for k, (_, m) in DIRECTIONS.items()}
    return GapBudget(rho, q, delta, per)


@dataclass
class ConstraintGap:
    tag: str
    outer_tags: list
    measured: float
    paired: float
    budget: float


@dataclass
class GapReport:
    mode: str
    rho: float
    delta: float
    per_constraint: list = field(default_factory=list)
    per_direction: dict = field(default_factory=dict)
    direction_budget: dict = field(default_factory=dict)
    # clamped: (max(u1-delta,0), max(u2-delta,0)) inside; shift: (u1-delta, u2-delta)
    # satisfies every rate constraint
    vertex_containment: bool = True
    shift_containment: bool = True
    worst_violation: float = 0.0

    @property
    def passed(self) -> bool:
        dir_ok = all(self.per_direction[k] <= self.direction_budget[k] + TOL for k in self.per_direction)
        return dir_ok and self.vertex_containment

    @property
    def worst_dir_gap(self) -> float:
        """Largest direction gap normalized by its multiple of delta."""
        return max(self.per_direction[k] / DIRECTIONS[k][1] for k in self.per_direction)

    def ledger_ok(self) -> bool:
        return all(c.paired <= c.budget + TOL for c in self.per_constraint)

    def to_dict(self):
        d = asdict(self)
        d["passed"] = self.passed
        return d

    def to_json(self):
        return json.dumps(self.to_dict())


def _branch(k, dx):
    # True when the relay-link term is the binding one
    return k <= dx


def appendix_pairing(mi: MIProfile, c1, c2, mode, q: QuantLevels, rho):
    """Paired outer tag and analytic gap constant for every achievable constraint.

    Every relay-aided term costs ``beta(q_i)`` when its link capacity binds and
    ``alpha(q_i)`` when the relay increment binds; a term with no relay help
    costs half a bit.
    """
    a = {1: alpha_fn(q.q1, rho), 2: alpha_fn(q.q2, rho)}
    b = {1: beta_fn(q.q1, rho), 2: beta_fn(q.q2, rho)}
    k1 = max(c1 - mi.xi1, 0.0)
    k2 = max(c2 - mi.xi2, 0.0)

    def cost(i, binds):
        return b[i] if binds else a[i]

    out = {}
    if mode == "two_links":
        out["T2.R1"] = ("T1.R1", max(a[1], b[1]))
        out["T2.R2"] = ("T1.R2", max(a[2], b[2]))
        sum_tags = {
            # (k1 binds, k2 binds) -> outer tag
            "T2.sum.1": ((mi.da1, mi.dg2), {(1, 1): 1, (1, 0): 4, (0, 1): 8, (0, 0): 10}),
            "T2.sum.2": ((mi.dg1, mi.da2), {(1, 1): 2, (1, 0): 5, (0, 1): 7, (0, 0): 11}),
            "T2.sum.3": ((mi.de1, mi.de2), {(1, 1): 3, (1, 0): 6, (0, 1): 9, (0, 0): 12}),
        }
        for tag, ((x1, x2), table) in sum_tags.items():
            s1, s2 = _branch(k1, x1), _branch(k2, x2)
            out[tag] = (f"T1.sum.{table[(int(s1), int(s2))]}", cost(1, s1) + cost(2, s2))
        # (links binding on own user, link binding on other user) -> outer index
        weighted = {(2, 1): 1, (0, 0): 2, (1, 0): 3, (0, 1): 4, (2, 0): 5, (1, 1): 6}
        for tag, own, other, (xa, xg, xe), kown, koth, i, j, prefix in (
            ("T2.2R1R2", 1, 2, (mi.da1, mi.dg1, mi.de2), k1, k2, 1, 2, "T1.2R1R2"),
            ("T2.R12R2", 2, 1, (mi.da2, mi.dg2, mi.de1), k2, k1, 2, 1, "T1.R12R2"),
        ):
            sa, sg, se = _branch(kown, xa), _branch(kown, xg), _branch(koth, xe)
            if sa and not sg:
                # only possible on a tie, since da <= dg
                sa = sg
            key = (int(sa) + int(sg), int(se))
            out[tag] = (f"{prefix}.{weighted[key]}", cost(i, sa) + cost(i, sg) + cost(j, se))
    elif mode == "single_link":
        out["C3.R1"] = ("T1.R1", max(a[1], b[1]))
        out["C3.R2"] = ("T1.R2", 0.5)
        for tag, x, (tc, td) in (("C3.sum.1", mi.da1, (1, 8)), ("C3.sum.2", mi.dg1, (2, 7)),
                                 ("C3.sum.3", mi.de1, (3, 9))):
            s = _branch(k1, x)
            out[tag] = (f"T1.sum.{tc if s else td}", 0.5 + cost(1, s))
        opts = [(2 * k1, 1, 0.5 + 2 * b[1]), (k1 + mi.da1, 6, 0.5 + a[1] + b[1]),
                (mi.da1 + mi.dg1, 4, 0.5 + 2 * a[1])]
        _, idx, bud = min(opts, key=lambda t: t[0])
        out["C3.2R1R2"] = (f"T1.2R1R2.{idx}", bud)
        s = _branch(k1, mi.de1)
        out["C3.R12R2"] = (f"T1.R12R2.{1 if s else 5}", 1.0 + cost(1, s))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return out


def _measured_rho(p, mode):
    b = link_budget(p)
    if mode == "single_link":
        return 0.0 if b.snr_r2 == 0 else (b.snr_r2 / b.inr2 if b.inr2 else math.inf)
    return b.rho


def _build(p, mode, rho, q, split):
    split = split or private_powers_etw(p)
    q = q or q_default(rho)
    mi = mi_profile(p, split, q)
    if mode == "two_links":
        ach = achievable_constraints(mi, p.c1, p.c2)
    else:
        ach = achievable_single_link(mi, p.c1)
    return mi, q, ach


def gap_report(p: ChannelParams, mode: str = "two_links", rho0: float = 1.0,
               q: QuantLevels | None = None, split: PowerSplit | None = None,
               strict: bool = False) -> GapReport:
    """Compare the achievable region with the outer bound for one channel.

    The quantizer and budget use ``rho0`` unless ``strict`` is set, in which
    case the channel's measured ratio is used.
    """
    if mode not in ("two_links", "single_link"):
        raise ValueError(f"unknown mode {mode!r}")
    reg = regime(p, rho0)
    if mode == "two_links" and not reg.weak_relay:
        raise RegimeViolation("channel is not in the weak-relay regime for rho0")
    if mode == "single_link" and not (reg.weak_relay_single and p.c2 == 0):
        raise RegimeViolation("single-link mode needs c2 = 0 and g2^2 <= rho0 * INR2")

    rho = _measured_rho(p, mode) if strict else float(rho0)
    budget = gap_budget(rho)
    mi, q, ach = _build(p, mode, rho, q, split)
    out = outer_constraints(p)
    rep = GapReport(mode=mode, rho=rho, delta=budget.delta)

    pairs = appendix_pairing(mi, p.c1, p.c2, mode, q, rho)
    for c in ach.constraints:
        same = [o for o in out.constraints if o.coeffs == c.coeffs]
        measured = min(o.rhs for o in same) - c.rhs
        otag, bud = pairs[c.tag]
        rep.per_constraint.append(ConstraintGap(c.tag, [otag], measured, out[otag].rhs - c.rhs, bud))

    osys, asys = out.to_system(), ach.to_system()
    worst = 0.0
    for k, (v, m) in DIRECTIONS.items():
        g = polytope.support(osys, v) - polytope.support(asys, v)
        rep.per_direction[k] = g
        rep.direction_budget[k] = m * budget.delta
        worst = max(worst, g - m * budget.delta)

    d = budget.delta
    ok = shift_ok = True
    for u in polytope.vertices(osys):
        pt = np.array([max(u.r1 - d, 0.0), max(u.r2 - d, 0.0)])
        viol = float(np.max(asys.A @ pt - asys.b, initial=0.0))
        worst = max(worst, viol)
        ok = ok and viol <= TOL
        # unclamped shift: the rate-constraint rows only, coordinates may go negative
        shifted = np.array([u.r1 - d, u.r2 - d])
        shift_ok = shift_ok and bool(np.all(asys.A @ shifted <= asys.b + TOL))
    rep.vertex_containment = ok
    rep.shift_containment = shift_ok
    rep.worst_violation = worst
    return rep


def gap_scan(seed, count, rho0=1.0, mode="two_links", start=0, strict=False, **sample_kw):
    """Run :func:`gap_report` on seeded samples; returns ``(index, report)`` pairs."""
    kind = "single_link" if mode == "single_link" else "weak_relay"
    chans = sample_channels(seed, count, rho0=rho0, regime_kind=kind, start=start, **sample_kw)
    return [(start + i, gap_report(p, mode, rho0, strict=strict)) for i, p in enumerate(chans)]


def gap_scan_csv(seed, results, fmt="{:.12g}") -> str:
    buf = io.StringIO()
    buf.write("seed,rho,worst_dir_gap,budget,pass\n")
    for idx, rep in results:
        buf.write(f"{seed}:{idx},{fmt.format(rep.rho)},{fmt.format(rep.worst_dir_gap)},"
                  f"{fmt.format(rep.delta)},{int(rep.passed)}\n")
    return buf.getvalue()
