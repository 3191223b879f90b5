"""Exact verification of local Plücker formulas for curves in flag varieties
of types A, B and D."""

from .exact import BiPoly, GaussianRational, RatFn, conj_involution, ddbar_log, derive, ratfn_equal
from .kahler import check_cartan_identity, curvature_coeff, metric_coeff, norm_squared
from .lie import RootData, cartan_matrix, chevalley_generators, principal_nilpotent
from .scenario import ScenarioConfig, run_scenario

__all__ = [
    "BiPoly",
    "GaussianRational",
    "RatFn",
    "RootData",
    "ScenarioConfig",
    "cartan_matrix",
    "check_cartan_identity",
    "chevalley_generators",
    "conj_involution",
    "curvature_coeff",
    "ddbar_log",
    "derive",
    "metric_coeff",
    "norm_squared",
    "principal_nilpotent",
    "ratfn_equal",
    "run_scenario",
]
