"""Batch command-line front end.

Exit codes: 0 success, 1 a self-check mismatch, 2 invalid channel or
arguments, 3 degenerate channel, 4 gap-budget violation.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import gdof, polytope
from .channel_model import REGIME_KINDS, ChannelParams, sample_channels
from .gap_analysis import RegimeViolation, gap_report, gap_scan_csv
from .mutual_info import (DegenerateChannelError, PowerSplit, QuantLevels, mi_profile,
                          private_powers_etw, q_default)
from .regions import (achievable_constraints, achievable_fixed_distribution,
                      achievable_single_link, hk_raw_constraints, outer_constraints)

INF_CLAMP = 1e6
EXIT_MISMATCH, EXIT_INVALID, EXIT_DEGENERATE, EXIT_VIOLATION = 1, 2, 3, 4
HK_SUBS = {"R1": {"S1": 1, "T1": 1}, "R2": {"S2": 1, "T2": 1}}


class UsageError(Exception):
    pass


def _num(x):
    return f"{x:.12g}"


def _clean(obj):
    """Round floats to 12 significant digits; infinities become the token "inf"."""
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return float(_num(obj))
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _capacity(text):
    v = float(text)
    return INF_CLAMP if math.isinf(v) else v


def _parse_params(text):
    text = text.strip()
    if text.startswith("{"):
        d = json.loads(text)
    else:
        d = {}
        for item in text.split(","):
            if "=" not in item:
                raise ValueError(f"expected key=value, got {item!r}")
            k, v = item.split("=", 1)
            d[k.strip()] = v.strip()
    return d


def _channel(args) -> ChannelParams:
    sources = [args.params is not None, args.params_file is not None]
    if sum(sources) > 1:
        raise UsageError("give exactly one of --params / --params-file / --seed")
    if args.params is not None:
        d = _parse_params(args.params)
    elif args.params_file is not None:
        d = json.loads(Path(args.params_file).read_text())
    elif args.seed is not None:
        p = sample_channels(args.seed, 1, rho0=args.rho0, regime_kind=args.regime, start=args.index)[0]
        d = p.to_dict()
    else:
        raise UsageError("a channel source is required (--params, --params-file or --seed)")
    d = {k: (_capacity(v) if k in ("c1", "c2") else float(v)) for k, v in d.items()}
    if args.c1 is not None:
        d["c1"] = args.c1
    if args.c2 is not None:
        d["c2"] = args.c2
    return ChannelParams.from_dict(d)


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _region_payload(name, poly):
    verts = polytope.vertices(poly)
    return {"hrep": poly.to_dict(), "vrep": [[v.r1, v.r2] for v in verts]}, verts


def cmd_region(args):
    p = _channel(args)
    split = private_powers_etw(p)
    if args.p1p is not None or args.p2p is not None:
        split = PowerSplit(split.p1p if args.p1p is None else args.p1p,
                           split.p2p if args.p2p is None else args.p2p)
    q = q_default(args.rho0)
    if args.q1 is not None or args.q2 is not None:
        q = QuantLevels(q.q1 if args.q1 is None else args.q1, q.q2 if args.q2 is None else args.q2)
    mi = mi_profile(p, split, q)
    outer = outer_constraints(p)
    if args.mode == "single_link":
        ach = achievable_single_link(mi, p.c1)
    else:
        ach = achievable_constraints(mi, p.c1, p.c2)
    outer_d, outer_v = _region_payload("outer", outer)
    ach_d, ach_v = _region_payload("achievable", ach)
    if args.format == "csv":
        if not args.out:
            raise UsageError("--format csv needs --out (two files are written)")
        stem = Path(args.out)
        stem.with_name(stem.stem + "_outer.csv").write_text(polytope.vertices_to_csv(outer_v))
        stem.with_name(stem.stem + "_achievable.csv").write_text(polytope.vertices_to_csv(ach_v))
        return 0
    payload = {
        "channel": p.to_dict(),
        "power_split": {"p1p": split.p1p, "p2p": split.p2p},
        "quantizer": {"q1": q.q1, "q2": q.q2},
        "mi_profile": mi.to_dict(),
        "outer": outer_d,
        "achievable": ach_d,
    }
    _emit(json.dumps(_clean(payload), indent=2, sort_keys=True) + "\n", args.out)
    return 0


def _threads():
    try:
        return max(1, int(os.environ.get("RIC_THREADS", "1")))
    except ValueError:
        return 1


def _scan_chunk(job):
    seed, start, count, rho0, mode, strict = job
    kind = "single_link" if mode == "single_link" else "weak_relay"
    chans = sample_channels(seed, count, rho0=rho0, regime_kind=kind, start=start)
    return [(start + i, gap_report(p, mode, rho0, strict=strict)) for i, p in enumerate(chans)]


def _chunks(seed, count, rho0, mode, strict, workers):
    size = max(1, math.ceil(count / workers))
    return [(seed, s, min(size, count - s), rho0, mode, strict) for s in range(0, count, size)]


def cmd_gap_scan(args):
    if args.seed is None:
        raise UsageError("gap-scan needs --seed")
    workers = _threads()
    jobs = _chunks(args.seed, args.count, args.rho0, args.mode, args.strict, workers)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_scan_chunk, jobs))
    else:
        parts = [_scan_chunk(j) for j in jobs]
    results = sorted((r for part in parts for r in part), key=lambda t: t[0])
    csv = gap_scan_csv(args.seed, results)
    if args.out:
        Path(args.out).write_text(csv)
    fails = [i for i, r in results if not r.passed]
    worst = {k: max(r.per_direction[k] for _, r in results) for k in results[0][1].per_direction}
    summary = {
        "mode": args.mode,
        "rho0": args.rho0,
        "count": len(results),
        "delta": results[0][1].delta,
        "max_direction_gap": worst,
        "direction_budget": results[0][1].direction_budget,
        "max_worst_violation": max(r.worst_violation for _, r in results),
        "passed": len(results) - len(fails),
        "failed": len(fails),
        "failed_indices": fails[:50],
    }
    sys.stdout.write(json.dumps(_clean(summary), indent=2, sort_keys=True) + "\n")
    if not args.out:
        sys.stdout.write(csv)
    return EXIT_VIOLATION if fails else 0


def cmd_gdof(args):
    if args.which == "fig5":
        text = gdof.fig5_csv()
    elif args.which == "fig9":
        text = gdof.fig9_csv()
    elif args.which == "fig10":
        text = gdof.fig10_csv()
    else:
        grid = args.snr_db or [80.0, 100.0, 120.0]
        q = gdof.GdofQuery(args.alpha, args.beta, args.kappa, beta1=args.beta1, beta2=args.beta2,
                           kappa1=args.kappa1)
        if args.mode == "single_link":
            exact = gdof.gdof_single(q.alpha, q.beta1 if q.beta1 is not None else q.beta,
                                     q.beta2 if q.beta2 is not None else q.beta,
                                     q.kappa1 if q.kappa1 is not None else q.kappa)
        else:
            exact = gdof.gdof_sum_symmetric(q)
        lines = ["snr_db,estimate,closed_form,error"]
        for s in grid:
            est = gdof.estimate_gdof_numeric(q, s, args.mode)
            lines.append(",".join(_num(v) for v in (s, est, exact, est - exact)))
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def _table_rows(kappa):
    rows, bad = [], 0
    for name, piece, oracle in (
        ("table1", gdof.table1_gain,
         lambda a, k: gdof.gdof_sum_alpha_eq_beta(a, k) - gdof.gdof_sum_alpha_eq_beta(a, 0.0)),
        ("table2", gdof.table2_gain,
         lambda a, k: gdof.gdof_single(a, a, a, k) - gdof.gdof_single(a, a, a, 0.0)),
    ):
        for lo, hi in gdof.table_intervals(kappa):
            a = (lo + hi) / 2 if math.isfinite(hi) else lo + 1.0
            v, o = piece(a, kappa), oracle(a, kappa)
            ok = abs(v - o) <= 1e-12
            bad += not ok
            rows.append((name, lo, hi, a, v, o, ok))
    return rows, bad


def cmd_tables(args):
    rows, bad = _table_rows(args.kappa)
    lines = ["table,alpha_lo,alpha_hi,alpha,piecewise,oracle,match"]
    for name, lo, hi, a, v, o, ok in rows:
        lines.append(f"{name},{_num(lo)},{_num(hi)},{_num(a)},{_num(v)},{_num(o)},{int(ok)}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_MISMATCH if bad else 0


def fme_discrepancies(seed, count, regime_kind="weak_relay", against="stated", rho0=1.0):
    """Support discrepancy between the projected raw system and the stated region."""
    out = []
    for p in sample_channels(seed, count, rho0=rho0, regime_kind=regime_kind):
        mi = mi_profile(p, private_powers_etw(p), q_default(rho0))
        proj = polytope.fme_project(hk_raw_constraints(mi, p.c1, p.c2), ("R1", "R2"), HK_SUBS)
        if against == "stated":
            ref = achievable_constraints(mi, p.c1, p.c2)
        else:
            ref = achievable_fixed_distribution(mi, p.c1, p.c2)
        out.append(polytope.max_support_discrepancy(proj, ref))
    return out


def cmd_fme_check(args):
    if args.seed is None:
        raise UsageError("fme-check needs --seed")
    d = fme_discrepancies(args.seed, args.count, args.regime, args.against, args.rho0)
    bad = sum(x > 1e-9 for x in d)
    summary = {"against": args.against, "count": len(d), "worst_discrepancy": max(d), "mismatches": bad}
    _emit(json.dumps(_clean(summary), indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_MISMATCH if bad else 0


def build_parser():
    ap = argparse.ArgumentParser(prog="relayic", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, channel=True):
        sp.add_argument("--rho0", type=float, default=1.0)
        sp.add_argument("--seed", type=int)
        sp.add_argument("--out")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--mode", choices=("two_links", "single_link"), default="two_links")
        if channel:
            sp.add_argument("--params", help="key=value list or JSON object")
            sp.add_argument("--params-file")
            sp.add_argument("--index", type=int, default=0, help="sample index with --seed")
            sp.add_argument("--regime", choices=REGIME_KINDS, default="weak_relay")
            sp.add_argument("--q1", type=float)
            sp.add_argument("--q2", type=float)
            sp.add_argument("--p1p", type=float)
            sp.add_argument("--p2p", type=float)
            sp.add_argument("--c1", type=_capacity)
            sp.add_argument("--c2", type=_capacity)

    sp = sub.add_parser("region", help="outer and achievable regions for one channel")
    common(sp)
    sp.set_defaults(func=cmd_region)

    sp = sub.add_parser("gap-scan", help="constant-gap check over seeded samples")
    common(sp, channel=False)
    sp.add_argument("--count", type=int, default=1000)
    sp.add_argument("--strict", action="store_true", help="use each channel's measured rho")
    sp.set_defaults(func=cmd_gap_scan)

    sp = sub.add_parser("gdof", help="GDoF curves and numeric estimates (CSV)")
    common(sp, channel=False)
    sp.add_argument("--which", choices=("fig5", "fig9", "fig10", "estimate"), default="fig5")
    sp.add_argument("--alpha", type=float, default=0.5)
    sp.add_argument("--beta", type=float, default=0.5)
    sp.add_argument("--kappa", type=float, default=0.2)
    sp.add_argument("--beta1", type=float)
    sp.add_argument("--beta2", type=float)
    sp.add_argument("--kappa1", type=float)
    sp.add_argument("--snr-db", type=float, nargs="+")
    sp.set_defaults(func=cmd_gdof)

    sp = sub.add_parser("tables", help="gain tables from piecewise forms and oracles")
    sp.add_argument("--kappa", type=float, default=0.2)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_tables)

    sp = sub.add_parser("fme-check", help="projection of the raw rate-split system")
    common(sp, channel=False)
    sp.add_argument("--count", type=int, default=1000)
    sp.add_argument("--regime", choices=REGIME_KINDS, default="weak_relay")
    sp.add_argument("--against", choices=("stated", "fixed"), default="stated",
                    help="compare with the seven stated bounds or the fixed-distribution region")
    sp.set_defaults(func=cmd_fme_check)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except DegenerateChannelError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (UsageError, RegimeViolation, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
