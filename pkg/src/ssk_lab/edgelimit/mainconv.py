from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from utils.reporting.metrics import ks_statistic
from utils.runners.seeding import ROLE_AIRY, ROLE_OVERLAP, derive_seed

from ..ensembles.sampler import sample_spectrum
from ..enums import EnsembleKind, XiEstimator
from ..errors import BatchFailedError, InvalidArgumentError, LabError, OutOfRegimeError
from ..overlap.contour import overlap_m2_contour
from ..overlap.expansion import overlap_expansion
from ..overlap.moments import q_value
from ..saddle.quadrature import ContourSpec
from .xi import xi_estimate

"""Distributional test of the overlap fluctuation limit.

A = N^{1/3}(⟨R₁₂²⟩ − q²) on zero-diagonal GOE spectra of size n_overlap is
compared with B = 2((β − 1)/β²)·Ξ̂ (full-spectrum estimator on tridiagonal
GOE of size n_airy).  Both KS(A, B) and KS(A, −B) are reported; the sign is
an empirical outcome.  The ``abs1`` observable uses N^{1/3}(⟨|R₁₂|⟩ − q)
from the expansion against Ξ̂/β.
"""

logger = logging.getLogger(__name__)

OBSERVABLES = ("m2", "abs1")
MIN_N_OVERLAP = 250
AIRY_FACTOR = 4


@dataclass(frozen=True)
class MainConvReport:
    beta: float
    n_overlap: int
    n_airy: int
    observable: str
    a_samples: np.ndarray
    b_samples: np.ndarray
    ks_plus: float
    ks_minus: float
    failures: int
    errors: List[str] = field(default_factory=list)

    @property
    def winning_sign(self) -> int:
        return 1 if self.ks_plus < self.ks_minus else -1

    @property
    def best_ks(self) -> float:
        return min(self.ks_plus, self.ks_minus)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "beta": self.beta,
            "n_overlap": self.n_overlap,
            "n_airy": self.n_airy,
            "observable": self.observable,
            "trials_used": int(self.a_samples.size),
            "ks_plus": self.ks_plus,
            "ks_minus": self.ks_minus,
            "winning_sign": self.winning_sign,
            "best_ks": self.best_ks,
            "failures": self.failures,
        }


def b_scale(beta: float, observable: str) -> float:
    """Multiplier of Ξ̂ on the limiting side."""
    if observable == "m2":
        return 2.0 * (beta - 1.0) / beta**2
    return 1.0 / beta


def check_regime(beta: float, n_overlap: int, n_airy: int, observable: str, enforce_regime: bool) -> None:
    if beta <= 1:
        raise OutOfRegimeError(f"the convergence test needs beta > 1, got {beta}")
    if observable not in OBSERVABLES:
        raise InvalidArgumentError(f"observable must be one of {OBSERVABLES}, got {observable!r}")
    if n_overlap < 2 or n_airy < 2:
        raise InvalidArgumentError("matrix sizes must be at least 2")
    if enforce_regime:
        if n_overlap < MIN_N_OVERLAP:
            raise InvalidArgumentError(f"n_overlap must be >= {MIN_N_OVERLAP}, got {n_overlap}")
        if n_airy < AIRY_FACTOR * n_overlap:
            raise InvalidArgumentError(f"n_airy must be >= {AIRY_FACTOR}*n_overlap, got {n_airy}")


def mainconv_trial(
    beta: float,
    n_overlap: int,
    n_airy: int,
    master_seed: int,
    trial: int,
    *,
    spec: Optional[ContourSpec] = None,
    observable: str = "m2",
) -> Tuple[float, float]:
    """(A, B) for one trial; the two sides use independent streams."""
    spectrum = sample_spectrum(
        EnsembleKind.GOE_ZERO_DIAG, n_overlap, derive_seed(master_seed, trial, ROLE_OVERLAP)
    )
    scale = n_overlap ** (1.0 / 3.0)
    if observable == "m2":
        m2 = overlap_m2_contour(spectrum, beta, spec).m2
        a_value = scale * (m2 - q_value(beta) ** 2)
    else:
        moments, _ = overlap_expansion(spectrum, beta, force=True)
        a_value = scale * (float(moments.abs1) - q_value(beta))
    airy = sample_spectrum(EnsembleKind.GOE_TRIDIAG, n_airy, derive_seed(master_seed, trial, ROLE_AIRY))
    xi = xi_estimate(airy, XiEstimator.FULL_SPECTRUM).value
    return a_value, b_scale(beta, observable) * xi


def mainconv_from_samples(
    beta: float,
    n_overlap: int,
    n_airy: int,
    a_samples: Sequence[float],
    b_samples: Sequence[float],
    *,
    observable: str = "m2",
    failures: int = 0,
    errors: Optional[List[str]] = None,
) -> MainConvReport:
    a = np.asarray(a_samples, dtype=float)
    b = np.asarray(b_samples, dtype=float)
    return MainConvReport(
        beta=float(beta),
        n_overlap=int(n_overlap),
        n_airy=int(n_airy),
        observable=observable,
        a_samples=a,
        b_samples=b,
        ks_plus=ks_statistic(a, b),
        ks_minus=ks_statistic(a, -b),
        failures=failures,
        errors=list(errors or []),
    )


def mainconv_test(
    beta: float,
    n_overlap: int,
    n_airy: int,
    trials: int,
    seed: int,
    *,
    spec: Optional[ContourSpec] = None,
    observable: str = "m2",
    enforce_regime: bool = True,
) -> MainConvReport:
    """KS(A, B) and KS(A, −B) over *trials* independent trials.

    Failed trials are skipped and counted; ``enforce_regime=False`` lifts the
    size preconditions for quick runs.

    Raises:
        OutOfRegimeError: ``beta <= 1``.
        InvalidArgumentError: sizes outside the regime.
        BatchFailedError: every trial failed.
    """
    check_regime(beta, n_overlap, n_airy, observable, enforce_regime)
    a_values: List[float] = []
    b_values: List[float] = []
    errors: List[str] = []
    for t in range(trials):
        try:
            a_value, b_value = mainconv_trial(
                beta, n_overlap, n_airy, seed, t, spec=spec, observable=observable
            )
        except LabError as exc:
            logger.exception("mainconv trial %d failed", t)
            errors.append(f"{t}: {exc}")
            continue
        a_values.append(a_value)
        b_values.append(b_value)
    if not a_values:
        raise BatchFailedError(f"all {trials} mainconv trials failed", failures=len(errors))
    report = mainconv_from_samples(
        beta,
        n_overlap,
        n_airy,
        a_values,
        b_values,
        observable=observable,
        failures=len(errors),
        errors=errors,
    )
    logger.info(
        "mainconv beta=%g: KS(+)=%.4f KS(-)=%.4f sign=%+d failures=%d",
        beta,
        report.ks_plus,
        report.ks_minus,
        report.winning_sign,
        report.failures,
    )
    return report


__all__ = [
    "MainConvReport",
    "OBSERVABLES",
    "b_scale",
    "check_regime",
    "mainconv_from_samples",
    "mainconv_test",
    "mainconv_trial",
]
