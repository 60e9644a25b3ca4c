"""Edge limit theory: Ξ estimators, counting statistics, decimation, convergence."""

from .xi import XiEstimate, xi_correction, xi_cutoff_from_top, xi_estimate
from .counting import (
    AIRY1_PROXY,
    CountingStats,
    counting_stats,
    counting_stats_from_counts,
    counting_trial,
    counting_window,
    reference_mean,
)
from .decimation import DecimationReport, DecimationTrial, decimation_report, decimation_trial, fr_decimation_check
from .mainconv import MainConvReport, mainconv_from_samples, mainconv_test, mainconv_trial

__all__ = [
    "XiEstimate",
    "xi_correction",
    "xi_cutoff_from_top",
    "xi_estimate",
    "AIRY1_PROXY",
    "CountingStats",
    "counting_stats",
    "counting_stats_from_counts",
    "counting_trial",
    "counting_window",
    "reference_mean",
    "DecimationReport",
    "DecimationTrial",
    "decimation_report",
    "decimation_trial",
    "fr_decimation_check",
    "MainConvReport",
    "mainconv_from_samples",
    "mainconv_test",
    "mainconv_trial",
]
