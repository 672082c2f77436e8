"""Optimal quantum adversary bounds for symmetrized ordered search."""
from .constructions import (
    adv_value,
    asymptotic_estimate,
    dual_witness,
    hns_value,
    hns_weights,
    madv_upper_bound,
    negative_dual,
    optimal_weights,
    principal_vector,
)
from .ospmodel import AdversaryWeights, adv_objective
from .sdp import SolverConfig, solve_primal

__version__ = "0.1.0"

__all__ = [
    "AdversaryWeights",
    "SolverConfig",
    "adv_objective",
    "adv_value",
    "asymptotic_estimate",
    "dual_witness",
    "hns_value",
    "hns_weights",
    "madv_upper_bound",
    "negative_dual",
    "optimal_weights",
    "principal_vector",
    "solve_primal",
]
