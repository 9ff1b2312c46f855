"""
一元迹型约化：t_K 常数、约化算法、整数极小与约化域判定
"""
from .algorithm import ConjugateProfile, ReductionCertificate, conjugate_profiles, reduce_unary
from .errors import AdmissibleWindowError, IntegerMinimumError, NotPisotError
from .facets import FacetCandidateReport, enumerate_facet_candidates
from .minimum import (
    IntegerMinimumResult,
    box_for_bound,
    fincke_pohst,
    integer_minimum,
    integer_minimum_box_scan,
    is_torsion,
    min_trace_nontorsion,
    trace_form_gram,
)
from .quality import ReductionQualityReport, verify_theorem4
from .reduced import find_reduction_witness, is_reduced, sound_cube_radius
from .tk import pisot_moduli_squared, t_k_delta, t_k_of_unit, t_k_squared

__all__ = [
    "AdmissibleWindowError",
    "ConjugateProfile",
    "FacetCandidateReport",
    "IntegerMinimumError",
    "IntegerMinimumResult",
    "NotPisotError",
    "ReductionCertificate",
    "ReductionQualityReport",
    "box_for_bound",
    "conjugate_profiles",
    "enumerate_facet_candidates",
    "fincke_pohst",
    "find_reduction_witness",
    "integer_minimum",
    "integer_minimum_box_scan",
    "is_reduced",
    "is_torsion",
    "min_trace_nontorsion",
    "pisot_moduli_squared",
    "reduce_unary",
    "sound_cube_radius",
    "t_k_delta",
    "t_k_of_unit",
    "t_k_squared",
    "trace_form_gram",
    "verify_theorem4",
]
