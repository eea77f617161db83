"""Small halfspace engine: 2-D vertices and support, containment, equality, FME.

Systems are ``A x <= b`` over named variables with implicit ``x >= 0``.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "HalfspaceSystem",
    "Vertex2D",
    "EmptyRegionError",
    "UnboundedError",
    "support",
    "vertices",
    "contains",
    "region_equal",
    "max_support_discrepancy",
    "fme_project",
    "directions",
    "vertices_to_json",
    "vertices_to_csv",
]

GEOM_TOL = 1e-9


class EmptyRegionError(ValueError):
    pass


class UnboundedError(ValueError):
    pass


@dataclass(frozen=True)
class Vertex2D:
    r1: float
    r2: float

    def as_tuple(self):
        return (self.r1, self.r2)


@dataclass
class HalfspaceSystem:
    variables: tuple
    A: np.ndarray
    b: np.ndarray
    tags: list = field(default_factory=list)

    def __post_init__(self):
        self.variables = tuple(self.variables)
        self.A = np.asarray(self.A, dtype=float).reshape(-1, len(self.variables))
        self.b = np.asarray(self.b, dtype=float).reshape(-1)
        if self.A.shape[0] != self.b.shape[0]:
            raise ValueError("row count mismatch between A and b")
        if not (np.all(np.isfinite(self.A)) and np.all(np.isfinite(self.b))):
            raise ValueError("halfspace entries must be finite")
        if not self.tags:
            self.tags = [f"row{i}" for i in range(len(self.b))]
        if len(self.tags) != len(self.b):
            raise ValueError("one tag per row required")

    @property
    def dim(self):
        return len(self.variables)

    def with_nonnegativity(self):
        """Rows plus explicit ``-x_j <= 0`` rows."""
        n = self.dim
        A = np.vstack([self.A, -np.eye(n)])
        b = np.concatenate([self.b, np.zeros(n)])
        return A, b


def _as_system(x) -> HalfspaceSystem:
    if isinstance(x, HalfspaceSystem):
        return x
    if hasattr(x, "to_system"):
        return x.to_system()
    raise TypeError(f"cannot interpret {type(x).__name__} as a halfspace system")


def _check_2d(sys):
    if sys.dim != 2:
        raise ValueError(f"expected a 2-D system, got {sys.dim} variables")


def _bounded(sys):
    # each variable needs a row with nonnegative coefficients bounding it
    A = sys.A
    ok = np.all(A >= 0, axis=1)
    return all(np.any(ok & (A[:, j] > 0)) for j in range(sys.dim))


def _vertex_array(sys):
    A, b = sys.with_nonnegativity()
    m = len(b)
    i, j = np.triu_indices(m, 1)
    a11, a12, a21, a22 = A[i, 0], A[i, 1], A[j, 0], A[j, 1]
    det = a11 * a22 - a12 * a21
    good = np.abs(det) > 1e-14
    i, j, det = i[good], j[good], det[good]
    x = (b[i] * A[j, 1] - A[i, 1] * b[j]) / det
    y = (A[i, 0] * b[j] - b[i] * A[j, 0]) / det
    pts = np.column_stack([x, y]) + 0.0  # no negative zeros
    scale = 1.0 + np.abs(b).max(initial=0.0)
    feas = np.all(pts @ A.T <= b + GEOM_TOL * scale, axis=1)
    pts = pts[feas]
    if len(pts) == 0:
        raise EmptyRegionError("region is empty")
    # dedupe at 1e-9
    keys = np.round(pts / GEOM_TOL).astype(np.int64)
    _, idx = np.unique(keys, axis=0, return_index=True)
    pts = pts[np.sort(idx)]
    return _hull_ccw(pts)


def _hull_ccw(pts):
    # Andrew monotone chain; drops collinear points
    P = sorted(map(tuple, pts))
    if len(P) <= 2:
        return np.array(P)

    def cross(o, a, c):
        return (a[0] - o[0]) * (c[1] - o[1]) - (a[1] - o[1]) * (c[0] - o[0])

    lower, upper = [], []
    for p in P:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 1e-15:
            lower.pop()
        lower.append(p)
    for p in reversed(P):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 1e-15:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    # start at the vertex closest to the origin for stable output
    k = min(range(len(hull)), key=lambda t: (hull[t][0] + hull[t][1], hull[t][0]))
    return np.array(hull[k:] + hull[:k])


def vertices(sys) -> list:
    """Counterclockwise hull vertices of a bounded 2-D system."""
    sys = _as_system(sys)
    _check_2d(sys)
    V = _vertex_array(sys)
    if not _bounded(sys):
        raise UnboundedError("region is unbounded")
    return [Vertex2D(float(x), float(y)) for x, y in V]


def support(sys, direction) -> float:
    """``max v.x`` over the region."""
    sys = _as_system(sys)
    _check_2d(sys)
    v = np.asarray(direction, dtype=float)
    _check_direction_bounded(sys, v)
    return float((_vertex_array(sys) @ v).max())


def _check_direction_bounded(sys, v):
    if _bounded(sys):
        return
    # fall back to a recession-cone test: x >= 0, A x <= 0 with v.x > 0
    A = sys.A
    for t in np.linspace(0.0, math.pi / 2, 181):
        d = np.array([math.cos(t), math.sin(t)])
        if np.all(A @ d <= 1e-12) and v @ d > 1e-12:
            raise UnboundedError(f"region is unbounded in direction {tuple(v)}")


def directions(n=360, extra=()):
    """``n`` evenly spaced unit directions in the nonnegative quadrant plus ``extra``."""
    t = np.linspace(0.0, math.pi / 2, n)
    dirs = [np.column_stack([np.cos(t), np.sin(t)])]
    for e in extra:
        e = np.asarray(e, dtype=float).reshape(-1, 2)
        norms = np.linalg.norm(e, axis=1)
        dirs.append(e[norms > 0] / norms[norms > 0, None])
    return np.vstack(dirs)


def contains(sys, point, tol=GEOM_TOL) -> bool:
    sys = _as_system(sys)
    x = np.asarray(point, dtype=float)
    if np.any(x < -tol):
        return False
    return bool(np.all(sys.A @ x <= sys.b + tol))


def max_support_discrepancy(a, b, n=360) -> float:
    """Largest ``|h_a(v) - h_b(v)|`` over the comparison directions."""
    a, b = _as_system(a), _as_system(b)
    dirs = directions(n, extra=(a.A, b.A))
    va, vb = _vertex_array(a), _vertex_array(b)
    ha = (va @ dirs.T).max(axis=0)
    hb = (vb @ dirs.T).max(axis=0)
    return float(np.abs(ha - hb).max())


def region_equal(a, b, tol=GEOM_TOL, n=360) -> bool:
    return max_support_discrepancy(a, b, n) <= tol


def _normalize_rows(A, b, tags, tol=1e-12):
    """Scale by max |coeff|, drop trivial rows, keep the tightest of duplicates."""
    out = {}
    for row, rhs, tag in zip(A, b, tags):
        s = np.abs(row).max()
        if s <= tol:
            if rhs < -1e-9:
                raise EmptyRegionError("projection is empty")
            continue
        row, rhs = row / s, rhs / s
        key = tuple(np.round(row, 12))
        if key not in out or rhs < out[key][1]:
            out[key] = (row, rhs, tag)
    rows = list(out.values())
    return (np.array([r[0] for r in rows]).reshape(-1, A.shape[1]),
            np.array([r[1] for r in rows]), [r[2] for r in rows])


def fme_project(sys, keep, substitutions) -> HalfspaceSystem:
    """Project onto ``keep`` after the change of variables in ``substitutions``.

    ``substitutions`` maps each kept name to ``{old_var: coeff}`` with positive
    coefficients, e.g. ``{"R1": {"S1": 1, "T1": 1}}``.  The first listed old
    variable of each definition is replaced by the kept one; the others are
    then eliminated by Fourier-Motzkin.
    """
    sys = _as_system(sys)
    keep = tuple(keep)
    if set(keep) != set(substitutions):
        raise ValueError("every kept variable needs exactly one substitution")
    old = list(sys.variables)
    pivots = {}
    for k in keep:
        defn = substitutions[k]
        if not defn:
            raise ValueError(f"empty definition for {k}")
        for v, c in defn.items():
            if v not in old:
                raise ValueError(f"unknown variable {v!r} in definition of {k}")
            if not c > 0:
                raise ValueError("substitution coefficients must be positive")
        piv = next(iter(defn))
        if piv in pivots.values():
            raise ValueError(f"variable {piv!r} used as pivot twice")
        pivots[k] = piv

    # new coordinates: kept vars then the non-pivot old vars
    rest = [v for v in old if v not in pivots.values()]
    new_vars = list(keep) + rest
    # old var as linear map of new vars
    M = np.zeros((len(old), len(new_vars)))
    for v in rest:
        M[old.index(v), new_vars.index(v)] = 1.0
    for k, piv in pivots.items():
        defn = substitutions[k]
        c0 = float(defn[piv])
        r = old.index(piv)
        M[r, new_vars.index(k)] = 1.0 / c0
        for v, c in defn.items():
            if v == piv:
                continue
            if v in pivots.values():
                raise ValueError("definitions may not share pivot variables")
            M[r, new_vars.index(v)] -= float(c) / c0

    A, b = sys.with_nonnegativity()
    tags = list(sys.tags) + [f"{v}>=0" for v in old]
    A = A @ M
    A, b, tags = _normalize_rows(A, b, tags)

    for v in rest:
        j = new_vars.index(v)
        pos, neg, zer = A[:, j] > 1e-12, A[:, j] < -1e-12, np.abs(A[:, j]) <= 1e-12
        rows, rhs, tg = [A[zer]], [b[zer]], [t for t, z in zip(tags, zer) if z]
        P, N = np.where(pos)[0], np.where(neg)[0]
        if len(P) and len(N):
            ap, an = A[P, j][:, None], -A[N, j][None, :]
            comb = (A[P][:, None, :] * an[..., None] + A[N][None, :, :] * ap[..., None])
            comb_b = b[P][:, None] * an + b[N][None, :] * ap
            comb[..., j] = 0.0
            rows.append(comb.reshape(-1, A.shape[1]))
            rhs.append(comb_b.reshape(-1))
            tg += [f"{tags[p]}+{tags[n]}" for p in P for n in N]
        A = np.vstack(rows)
        b = np.concatenate(rhs)
        A, b, tags = _normalize_rows(A, b, tg)
        A[:, j] = 0.0

    cols = [new_vars.index(k) for k in keep]
    A = A[:, cols]
    # implicit nonnegativity makes rows with only nonpositive coeffs and rhs >= 0 redundant
    implied = np.all(A <= 1e-12, axis=1) & (b >= -1e-12)
    A, b = A[~implied], b[~implied]
    tags = [t for t, d in zip(tags, implied) if not d]
    A, b, tags = _normalize_rows(A, b, tags)
    out = HalfspaceSystem(keep, A, b, tags)
    if len(keep) == 2 and len(b):
        out = _drop_inactive(out)
    return out


def _drop_inactive(sys):
    V = _vertex_array(sys)
    slack = sys.b[:, None] - sys.A @ V.T
    active = np.any(slack <= 1e-9 * (1 + np.abs(sys.b))[:, None], axis=1)
    return HalfspaceSystem(sys.variables, sys.A[active], sys.b[active],
                           [t for t, a in zip(sys.tags, active) if a])


def vertices_to_json(verts) -> str:
    return json.dumps([[v.r1, v.r2] for v in verts])


def vertices_to_csv(verts, fmt="{:.12g}") -> str:
    buf = io.StringIO()
    buf.write("r1,r2\n")
    for v in verts:
        buf.write(f"{fmt.format(v.r1)},{fmt.format(v.r2)}\n")
    return buf.getvalue()
