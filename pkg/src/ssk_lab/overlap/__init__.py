"""Overlap moments: contour quadrature, expansions, Monte Carlo and surrogate."""

from .moments import OverlapMoments, abs_overlap_bounds, central_fourth, q_value
from .contour import ContourIntegrals, contour_integrals, overlap_m2_contour, overlap_m4_contour
from .expansion import (
    FOURTH_MOMENT_FORMS,
    ExpansionReport,
    expansion_terms,
    overlap_expansion,
    overlap_keyhole_leading,
)
from .gibbs import gibbs_mc_oracle
from .heuristic import SurrogateSample, bldw_heuristic
from .exact import two_spin_moments

__all__ = [
    "OverlapMoments",
    "abs_overlap_bounds",
    "central_fourth",
    "q_value",
    "ContourIntegrals",
    "contour_integrals",
    "overlap_m2_contour",
    "overlap_m4_contour",
    "ExpansionReport",
    "expansion_terms",
    "overlap_expansion",
    "overlap_keyhole_leading",
    "FOURTH_MOMENT_FORMS",
    "gibbs_mc_oracle",
    "SurrogateSample",
    "bldw_heuristic",
    "two_spin_moments",
]
