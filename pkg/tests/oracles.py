"""Independent reference computations used by the test suite."""

import itertools
import math

import numpy as np


def gaussian_terms(p, p1p, p2p, q1, q2):
    """Every mutual-information term from covariance log-determinants.

    Components: private U_i (power p_ip) and common W_i (power 1 - p_ip);
    observations at receiver i are (Y_i, Y_R + eta_i).
    """
    var = {"U1": p1p, "W1": 1 - p1p, "U2": p2p, "W2": 1 - p2p}
    # gains of each component into (Y1, Y2, YR)
    gain = {"U1": (p.h11, p.h12, p.g1), "W1": (p.h11, p.h12, p.g1),
            "U2": (p.h21, p.h22, p.g2), "W2": (p.h21, p.h22, p.g2)}

    def cov(rows, known, q):
        # rows: indices into (Y1, Y2, YR); known: components conditioned on
        n = len(rows)
        C = np.eye(n)
        if 2 in rows:
            C[rows.index(2), rows.index(2)] += q
        for k, v in var.items():
            if k in known:
                continue
            h = np.array([gain[k][r] for r in rows])
            C += v * np.outer(h, h)
        return np.linalg.det(C)

    def mi(rows, target, given, q):
        return 0.5 * math.log2(cov(rows, given, q) / cov(rows, given | target, q))

    out = {}
    for i, q in ((1, q1), (2, q2)):
        j = 3 - i
        Xi = {f"U{i}", f"W{i}"}
        Wi, Wj = {f"W{i}"}, {f"W{j}"}
        y = [i - 1]
        yr = [i - 1, 2]
        terms = {"a": (Xi, Wi | Wj), "d": (Xi, Wj), "e": (Xi | Wj, Wi), "g": (Xi | Wj, set())}
        for name, (target, given) in terms.items():
            base = mi(y, target, given, q)
            out[f"{name}{i}"] = base
            out[f"d{name}{i}"] = mi(yr, target, given, q) - base
        # xi_i = I(Y_R; Yhat | Y_i, X_i, W_j) = h(Yhat | Y_i, X_i, W_j) - h(eta)
        known = Xi | Wj
        full = cov(yr, known, q) / cov(y, known, q)
        out[f"xi{i}"] = 0.5 * math.log2(full / q)
    return out


def brute_vertices(A, b, tol=1e-9):
    """All feasible pairwise intersections of the rows and the axes."""
    A = np.vstack([np.asarray(A, float), -np.eye(2)])
    b = np.concatenate([np.asarray(b, float), [0.0, 0.0]])
    pts = []
    for i, j in itertools.combinations(range(len(b)), 2):
        M = A[[i, j]]
        if abs(np.linalg.det(M)) < 1e-14:
            continue
        x = np.linalg.solve(M, b[[i, j]])
        if np.all(A @ x <= b + tol):
            pts.append(x)
    return np.array(pts)
