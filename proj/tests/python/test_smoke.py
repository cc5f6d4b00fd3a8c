from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

import thetasat


def brute_theta_free_max(n, edges, a, b):
    pattern = nx.Graph(thetasat.theta_edges(a, b)[1])
    for k in range(len(edges), -1, -1):
        for sub in combinations(edges, k):
            host = nx.Graph(sub)
            matcher = nx.algorithms.isomorphism.GraphMatcher(host, pattern)
            if not matcher.subgraph_is_monomorphic():
                return k
    return 0


def test_theta_shape():
    order, edges = thetasat.theta_edges(3, 4)
    assert order == 3 * 3 + 2
    assert len(edges) == 12
    g = nx.Graph(edges)
    assert sorted(d for _, d in g.degree())[-2:] == [3, 3]


def test_two_density_cycle():
    assert thetasat.two_density(4, [(0, 1), (1, 2), (2, 3), (0, 3)]) == Fraction(3, 2)


def test_count_c4_in_k4():
    k4 = list(combinations(range(4), 2))
    assert thetasat.count_theta(4, k4, 2, 2) == 3


def test_extremal_matches_brute_force_on_k5():
    k5 = list(combinations(range(5), 2))
    r = thetasat.extremal(5, k5, 2, 2)
    assert r["optimal"]
    assert r["value"] == brute_theta_free_max(5, k5, 2, 2) == 6
    assert thetasat.count_theta(5, r["witness"], 2, 2) == 0


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=2**32), st.sampled_from(["1/3", "1/2", "2/3"]))
def test_gnp_deterministic_and_extremal_bounded(seed, p):
    edges = thetasat.gnp(7, p, seed)
    assert edges == thetasat.gnp(7, p, seed)
    r = thetasat.extremal(7, edges, 2, 2)
    assert r["value"] <= len(edges)
    assert thetasat.count_theta(7, r["witness"], 2, 2) == 0


def test_exponent_row():
    row = thetasat.exponent_row(2, 2)
    assert row["m2"] == Fraction(3, 2)
    assert row["sparse_exponent"] == -1 / row["m2"]


def test_bounds_threshold():
    assert not thetasat.bounds_feasible(8, 4)
    assert thetasat.bounds_feasible(9, 4)


def test_phase_rows_full_density():
    rows = thetasat.phase_experiment(2, 2, 8, [Fraction(1, 2), 1], 2, 5)
    assert len(rows) == 4
    full = [r for r in rows if r["p"] == 1]
    assert all(r["edges"] == 28 and r["exact"] == 11 for r in full)


def test_bad_pattern_raises():
    with pytest.raises(ValueError):
        thetasat.theta_edges(1, 4)
