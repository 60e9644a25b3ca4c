"""Deterministic spectral utilities on a fixed realization."""

from .eigen import eigen_sym, eigen_tridiagonal
from .semicircle import (
    ClassicalLocations,
    classical_locations,
    edge_location_asymptotic,
    local_law_bound,
    semicircle_cdf,
    semicircle_density,
    stieltjes_semicircle,
)
from .diagnostics import (
    EdgeStatistics,
    EventFlags,
    GapTail,
    LoopIdentity,
    edge_statistics,
    edge_sums,
    event_flags,
    gap_tail,
    gap_tail_from_gaps,
    loop_identity,
    rigidity_bound,
    scaled_gaps,
)
from .stieltjes import hs_trace, stieltjes

__all__ = [
    "eigen_sym",
    "eigen_tridiagonal",
    "ClassicalLocations",
    "classical_locations",
    "edge_location_asymptotic",
    "local_law_bound",
    "semicircle_cdf",
    "semicircle_density",
    "stieltjes_semicircle",
    "EdgeStatistics",
    "EventFlags",
    "GapTail",
    "LoopIdentity",
    "edge_statistics",
    "edge_sums",
    "event_flags",
    "gap_tail",
    "gap_tail_from_gaps",
    "loop_identity",
    "rigidity_bound",
    "scaled_gaps",
    "hs_trace",
    "stieltjes",
]
