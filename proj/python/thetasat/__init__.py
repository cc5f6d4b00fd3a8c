"""Theta-graph counting, extremal and container tools."""
from fractions import Fraction

from . import _thetasat
from ._thetasat import bounds_feasible, count_theta, extremal, gnp, theta_edges

__all__ = [
    "bounds_feasible",
    "count_theta",
    "exponent_row",
    "extremal",
    "gnp",
    "phase_experiment",
    "theta_edges",
    "two_density",
]


def two_density(n, edges, proper_only=False):
    return Fraction(_thetasat.two_density(n, list(edges), proper_only))


def exponent_row(a, b):
    row = _thetasat.exponent_row(a, b)
    return {k: Fraction(v) if isinstance(v, str) else v for k, v in row.items()}


def phase_experiment(a, b, n, p_grid, trials, seed, exact_cap=12):
    rows = _thetasat.phase_experiment(a, b, n, [str(Fraction(p)) for p in p_grid], trials, seed, exact_cap)
    for row in rows:
        row["p"] = Fraction(row["p"])
    return rows
