import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_vertices
from relayic.polytope import (EmptyRegionError, HalfspaceSystem, UnboundedError, contains,
                              fme_project, region_equal, support, vertices, vertices_to_csv,
                              vertices_to_json)


def sys2(rows, rhs):
    return HalfspaceSystem(("R1", "R2"), rows, rhs)


SQUARE = sys2([[1, 0], [0, 1]], [1, 1])
PENT = sys2([[1, 0], [0, 1], [1, 1]], [3, 2, 4])


def test_support_examples():
    assert support(SQUARE, (1, 1)) == 2
    assert support(PENT, (1, 1)) == 4
    assert support(PENT, (2, 1)) == 7


def test_vertices_examples():
    assert [v.as_tuple() for v in vertices(SQUARE)] == [(0, 0), (1, 0), (1, 1), (0, 1)]
    tri = vertices(sys2([[1, 1]], [1]))
    assert [v.as_tuple() for v in tri] == [(0, 0), (1, 0), (0, 1)]
    hexa = sys2([[1, 0], [0, 1], [1, 1], [2, 1]], [3, 2, 4, 6])
    got = {v.as_tuple() for v in vertices(hexa)}
    assert got == {(0, 0), (3, 0), (2, 2), (0, 2)}


def test_errors():
    with pytest.raises(EmptyRegionError):
        vertices(sys2([[1, 0]], [-1]))
    with pytest.raises(UnboundedError):
        vertices(sys2([[1, 0]], [1]))
    with pytest.raises(UnboundedError):
        support(sys2([[1, 0]], [1]), (0, 1))
    # bounded in the requested direction even though the region is not
    assert support(sys2([[1, 0]], [1]), (1, 0)) == 1
    with pytest.raises(ValueError):
        support(HalfspaceSystem(("a", "b", "c"), [[1, 1, 1]], [1]), (1, 1))


def test_contains_and_equality():
    assert contains(SQUARE, (0.5, 0.5))
    assert not contains(SQUARE, (1.1, 0.5))
    assert region_equal(PENT, PENT)
    shrunk = sys2([[1, 0], [0, 1]], [1 - 1e-6, 1 - 1e-6])
    assert region_equal(SQUARE, shrunk, tol=1e-3)
    assert not region_equal(SQUARE, shrunk, tol=1e-9)


def test_serialization():
    v = vertices(PENT)
    assert vertices_to_json(v) == "[[0.0, 0.0], [3.0, 0.0], [3.0, 1.0], [2.0, 2.0], [0.0, 2.0]]"
    assert vertices_to_csv(v).splitlines()[:3] == ["r1,r2", "0,0", "3,0"]


@settings(max_examples=150, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.floats(0.1, 10)),
                min_size=1, max_size=7))
def test_vertices_match_bruteforce_and_support(rows):
    A = np.array([[a, b] for a, b, _ in rows], float)
    b = np.array([r for *_, r in rows])
    s = sys2(A, b)
    try:
        got = np.array([v.as_tuple() for v in vertices(s)])
    except UnboundedError:
        return
    brute = brute_vertices(A, b)
    # every hull vertex is a feasible pairwise intersection, and vice versa up to the hull
    for v in got:
        assert np.min(np.linalg.norm(brute - v, axis=1)) < 1e-8
    for d in np.random.default_rng(0).random((20, 2)):
        assert support(s, d) == pytest.approx((brute @ d).max(), abs=1e-9)


def test_fme_trivial():
    s = HalfspaceSystem(("S1", "T1"), [[1, 0], [0, 1]], [2, 3])
    out = fme_project(s, ["R1"], {"R1": {"S1": 1, "T1": 1}})
    assert out.variables == ("R1",)
    assert out.A.tolist() == [[1.0]] and out.b.tolist() == [5.0]


def test_fme_dominated_row():
    a, d = 1.0, 2.5
    s = HalfspaceSystem(("S1", "T1"), [[1, 0], [1, 1]], [a, d])
    out = fme_project(s, ["R1"], {"R1": {"S1": 1, "T1": 1}})
    assert out.b.tolist() == [d]


def test_fme_validation():
    s = HalfspaceSystem(("S1", "T1"), [[1, 0]], [1])
    with pytest.raises(ValueError):
        fme_project(s, ["R1"], {"R1": {"X": 1}})
    with pytest.raises(ValueError):
        fme_project(s, ["R1"], {})


def _grid_feasible(A, b, grid):
    return np.all(grid @ A.T <= b + 1e-9, axis=1)


@pytest.mark.parametrize("seed", range(12))
def test_fme_soundness_on_random_4var_systems(seed):
    rng = np.random.default_rng(seed)
    A = rng.integers(0, 3, size=(6, 4)).astype(float)
    A[rng.random(A.shape) < 0.3] = 0
    A[:4] = np.maximum(A[:4], np.eye(4))  # keep it bounded
    b = rng.integers(1, 5, size=6).astype(float)
    s = HalfspaceSystem(("S1", "T1", "S2", "T2"), A, b)
    out = fme_project(s, ["R1", "R2"], {"R1": {"S1": 1, "T1": 1}, "R2": {"S2": 1, "T2": 1}})

    step = 0.25
    ax = np.arange(0, 4 + 1e-9, step)
    lift = np.array(list(itertools.product(ax, repeat=4)))
    lift = lift[_grid_feasible(A, b, lift)]
    reach = {(round(x[0] + x[1], 6), round(x[2] + x[3], 6)) for x in lift}
    pts = np.array([(r1, r2) for r1 in np.arange(0, 8.01, step) for r2 in np.arange(0, 8.01, step)])
    proj = _grid_feasible(out.A, out.b, pts)
    for p, ok in zip(pts, proj):
        assert ok == ((round(p[0], 6), round(p[1], 6)) in reach), p
