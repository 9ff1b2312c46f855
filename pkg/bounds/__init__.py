"""
闭式上界：面数、截面体积、Blichfeldt 计数、交错和渐近、Pisot 高度
"""
from .errors import MixedSignatureError
from .facets import FRIEDMAN_BOUND, FacetBoundInput, FacetBoundResult, facet_bound, rank_exponent
from .heights import (
    gamma_for_signature,
    log_tk_bound,
    log_tk_bound_epsilon,
    optimal_epsilon,
    pisot_height_bound,
)
from .sums import (
    ENVELOPE_LIMIT,
    ExactRational,
    alternating_sum,
    alternating_sum_ratio,
    factorial_ratio,
)
from .volume import (
    MonteCarloVolume,
    blichfeldt_bound,
    cube_slice_volume,
    cube_slice_volume_monte_carlo,
)

__all__ = [
    "ExactRational",
    "FRIEDMAN_BOUND",
    "FacetBoundInput",
    "FacetBoundResult",
    "ENVELOPE_LIMIT",
    "MixedSignatureError",
    "MonteCarloVolume",
    "alternating_sum",
    "alternating_sum_ratio",
    "blichfeldt_bound",
    "cube_slice_volume",
    "cube_slice_volume_monte_carlo",
    "facet_bound",
    "factorial_ratio",
    "gamma_for_signature",
    "log_tk_bound",
    "log_tk_bound_epsilon",
    "optimal_epsilon",
    "pisot_height_bound",
    "rank_exponent",
]
