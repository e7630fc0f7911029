"""Edge-percolation laboratory for Cartesian graph powers and sparse graphs."""

import json as _json

from ._core import (
    BaseGraph,
    DegreePolynomial,
    DomainError,
    Graph,
    InternalError,
    ThresholdSolution,
    boundary_of_set,
    degree_polynomial,
    eval_polynomial,
    exact_connectivity_probability,
    exact_isolated_distribution,
    factorial_moments,
    isoperimetric_profile,
    min_boundary,
    parse_graph,
    poisson_tv_distance,
    read_base_graph,
    solve_threshold,
    tillich_constant_estimate,
    wilson_interval,
)
from . import _core

__all__ = [
    "BaseGraph",
    "DegreePolynomial",
    "DomainError",
    "Graph",
    "InternalError",
    "ThresholdSolution",
    "boundary_of_set",
    "check_basic_conditions",
    "degree_polynomial",
    "ell_dominating_set",
    "eval_polynomial",
    "exact_connectivity_probability",
    "exact_isolated_distribution",
    "factorial_moments",
    "isoperimetric_profile",
    "min_boundary",
    "parse_graph",
    "poisson_tv_distance",
    "randomized_dominating_set",
    "read_base_graph",
    "run_experiment",
    "run_trial",
    "solve_threshold",
    "tillich_constant_estimate",
    "wilson_interval",
]


def run_trial(graph, p, seed=0, trial_index=0):
    """One percolation trial; returns the outcome as a dict."""
    return _json.loads(_core.run_trial_json(graph, p, seed, trial_index))


def run_experiment(graph, lambda_=None, p=None, trials=1000, seed=0, r_max=4, workers=1,
                   timing=False):
    """Monte Carlo experiment; returns the JSON report as a dict."""
    return _json.loads(
        _core.run_experiment_json(graph, lambda_, p, trials, seed, r_max, workers, timing))


def check_basic_conditions(graph, n, k, epsilon_prime=0.5, c=1.0, epsilon=1.0):
    return _json.loads(_core.check_basic_conditions_json(graph, n, k, epsilon_prime, c, epsilon))


def randomized_dominating_set(graph, given, delta, seed=0):
    return _json.loads(_core.randomized_dominating_set_json(graph, list(given), delta, seed))


def ell_dominating_set(graph, ell):
    return _json.loads(_core.ell_dominating_set_json(graph, ell))
