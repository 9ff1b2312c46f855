"""
三次全实域：秩 2 l_inf 约化基、例外集扫描与面候选
"""
from .basis import (
    Rank2Basis,
    hypothesis_quantities,
    random_reduced_basis,
    rank2_basis_of,
    reduce_basis_linf_rank2,
)
from .scan import (
    EXCEPTIONAL_SET,
    CubicFacetCandidates,
    ScanSample,
    ScanSummary,
    cubic_facet_candidates,
    cubic_t_bound,
    lemma6_scan,
    scan_random_bases,
)

__all__ = [
    "EXCEPTIONAL_SET",
    "CubicFacetCandidates",
    "Rank2Basis",
    "ScanSample",
    "ScanSummary",
    "cubic_facet_candidates",
    "cubic_t_bound",
    "hypothesis_quantities",
    "lemma6_scan",
    "random_reduced_basis",
    "rank2_basis_of",
    "reduce_basis_linf_rank2",
    "scan_random_bases",
]
