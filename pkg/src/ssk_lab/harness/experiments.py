from __future__ import annotations

import logging
import math
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from utils.reporting.metrics import fraction, summarize
from utils.runners.batch_config import RunConfig
from utils.runners.seeding import (
    ROLE_AIRY,
    ROLE_GOE_N,
    ROLE_MONTE_CARLO,
    ROLE_OVERLAP,
    ROLE_SPECTRUM,
    derive_seed,
)

from ..edgelimit import counting, decimation, mainconv
from ..edgelimit.xi import xi_cutoff_from_top, xi_estimate
from ..ensembles import SpectrumSample, sample_coupled_pair, sample_spectrum, top_eigenvalues
from ..enums import EnsembleKind, Experiment, XiEstimator
from ..errors import ConfigError, InvalidArgumentError
from ..overlap import (
    FOURTH_MOMENT_FORMS,
    abs_overlap_bounds,
    bldw_heuristic,
    gibbs_mc_oracle,
    overlap_expansion,
    overlap_keyhole_leading,
    overlap_m4_contour,
)
from ..overlap import gibbs
from ..saddle.quadrature import ContourSpec
from ..spectral import edge_statistics, event_flags, gap_tail_from_gaps, loop_identity
from ..zerodiag import ev_diff_report, max_k, stieltjes_bound, stieltjes_diff, stieltjes_window, weyl_check
from .records import TrialRecord
from .registry import ExperimentSpec

"""Trial and summary hooks of the built-in experiments.

Each trial derives its seeds from ``(master_seed, trial_index, role)`` only,
so a record does not depend on which worker produced it.  Summaries receive
successful records in trial order.
"""

logger = logging.getLogger(__name__)

Outputs = Dict[str, Any]

# Ξ̂ stabilization threshold between two cutoffs
XI_STABLE_TOL = 0.3
# zero-diagonal eigenvalue shift is compared against n^ZERODIAG_EXPONENT
ZERODIAG_EXPONENT = -0.8
MIN_GAP_SAMPLES = 100


# ------------------------------------------------------------------
# shared helpers
# ------------------------------------------------------------------


def _kind(config: RunConfig, default: EnsembleKind) -> EnsembleKind:
    return EnsembleKind.parse(config.kind) if config.kind is not None else default


def contour_spec(config: RunConfig) -> ContourSpec:
    return ContourSpec.from_mapping(config.contour)


def _z_grid(config: RunConfig) -> np.ndarray:
    return np.array([complex(re, im) for re, im in config.z_grid], dtype=complex)


def _as_config_error(check: Callable[[RunConfig], None]) -> Callable[[RunConfig], None]:
    """Report argument problems found while validating as ConfigError."""

    def wrapped(config: RunConfig) -> None:
        try:
            check(config)
        except ConfigError:
            raise
        except InvalidArgumentError as exc:
            raise ConfigError(str(exc)) from exc

    wrapped.__name__ = check.__name__
    return wrapped


def _require_trials(config: RunConfig, minimum: int, what: str) -> None:
    if config.enforce_regime and 0 < config.trials < minimum:
        raise ConfigError(f"{what} needs at least {minimum} trials, got {config.trials}")


def _column(records: List[TrialRecord], key: str) -> np.ndarray:
    values = [r.outputs.get(key) for r in records]
    return np.array([math.nan if v is None else float(v) for v in values], dtype=float)


def _finite(values: np.ndarray) -> np.ndarray:
    return values[np.isfinite(values)]


# ------------------------------------------------------------------
# sample
# ------------------------------------------------------------------


def _validate_sample(config: RunConfig) -> None:
    _kind(config, EnsembleKind.GOE_DENSE)
    if _kind(config, EnsembleKind.GOE_DENSE).is_tridiagonal and config.n < 2:
        raise ConfigError("tridiagonal ensembles need n >= 2")


def _sample_trial(config: RunConfig, index: int) -> Tuple[int, Outputs]:
    seed = derive_seed(config.master_seed, index, ROLE_SPECTRUM)
    spectrum = sample_spectrum(_kind(config, EnsembleKind.GOE_DENSE), config.n, seed)
    outputs: Outputs = spectrum.to_record()
    outputs["lambda_max"] = spectrum.lambda_max
    if spectrum.n >= 2:
        outputs["scaled_gap"] = spectrum.n ** (2.0 / 3.0) * spectrum.top_gap
        stats = edge_statistics(spectrum, config.beta if config.beta > 1 else None)
        outputs.update(stats.to_dict())
    flags = event_flags(spectrum, config.delta, config.eps1, rigidity_constant=config.rigidity_constant)
    outputs.update(gap_ok=flags.gap_ok, rigidity_ok=flags.rigidity_ok, event_f=flags.event_f)
    return seed, outputs


def _sample_summary(config: RunConfig, records: List[TrialRecord], failures: int) -> Dict[str, Any]:
    if not records:
        return {}
    summary: Dict[str, Any] = {
        "lambda_max": summarize(_column(records, "lambda_max")),
        "event_f_fraction": fraction(r.outputs["event_f"] for r in records),
    }
    gaps = _finite(_column(records, "scaled_gap"))
    if gaps.size:
        summary["scaled_gap"] = summarize(gaps)
    kind = _kind(config, EnsembleKind.GOE_DENSE)
    if kind is EnsembleKind.GOE_DENSE and config.n >= 2 and len(records) >= 2:
        identity = loop_identity([SpectrumSample.from_record(r.outputs) for r in records])
        summary["loop_identity"] = {
            "lhs_mean": identity.lhs_mean,
            "rhs_mean": identity.rhs_mean,
            "difference": identity.difference,
            "stderr": identity.stderr,
        }
    return summary


# ------------------------------------------------------------------
# overlap
# ------------------------------------------------------------------


def _validate_overlap(config: RunConfig) -> None:
    _kind(config, EnsembleKind.GOE_ZERO_DIAG)
    contour_spec(config)
    if config.fourth_moment_form not in FOURTH_MOMENT_FORMS:
        raise ConfigError(f"fourth_moment_form must be one of {FOURTH_MOMENT_FORMS}")
    if config.method == "mc":
        if config.n > gibbs.MAX_N:
            raise ConfigError(f"method mc is limited to n <= {gibbs.MAX_N}, got {config.n}")
        if config.n_samples < gibbs.MIN_SAMPLES:
            raise ConfigError(f"method mc needs n_samples >= {gibbs.MIN_SAMPLES}")
    elif config.beta <= 1:
        raise ConfigError(f"method {config.method} needs beta > 1, got {config.beta}")
    if config.method in ("bldw", "expansion") and config.n < 2:
        raise ConfigError(f"method {config.method} needs n >= 2")


def _contour_outputs(config: RunConfig, spectrum: SpectrumSample) -> Outputs:
    moments = overlap_m4_contour(spectrum, config.beta, contour_spec(config))
    outputs = moments.to_dict()
    lower, upper = abs_overlap_bounds(moments.m2, moments.central4, config.beta)
    outputs.update(abs1_lower=lower, abs1_upper=upper, violations=moments.invariant_violations())
    if spectrum.n >= 2:
        expansion, report = overlap_expansion(
            spectrum,
            config.beta,
            delta=config.delta,
            eps1=config.eps1,
            rigidity_constant=config.rigidity_constant,
            force=True,
            fourth_moment_form=config.fourth_moment_form,
        )
        outputs.update(
            event_f=not report.forced,
            expansion_m2=expansion.m2,
            expansion_central4=expansion.central4,
            residual_m2=abs(moments.m2 - expansion.m2),
            residual_central4=abs(moments.central4 - expansion.central4),
        )
    return outputs


def _overlap_trial(config: RunConfig, index: int) -> Tuple[int, Outputs]:
    seed = derive_seed(config.master_seed, index, ROLE_OVERLAP)
    spectrum = sample_spectrum(_kind(config, EnsembleKind.GOE_ZERO_DIAG), config.n, seed)
    mc_seed = derive_seed(config.master_seed, index, ROLE_MONTE_CARLO)
    method = config.method
    if method == "contour":
        outputs = _contour_outputs(config, spectrum)
    elif method == "expansion":
        moments, report = overlap_expansion(
            spectrum,
            config.beta,
            delta=config.delta,
            eps1=config.eps1,
            rigidity_constant=config.rigidity_constant,
            force=config.force,
            fourth_moment_form=config.fourth_moment_form,
        )
        outputs = {**moments.to_dict(), "report": report.to_dict(), "event_f": not report.forced}
    elif method == "mc":
        outputs = gibbs_mc_oracle(spectrum, config.beta, config.n_samples, mc_seed).to_dict()
    elif method == "bldw":
        surrogate = bldw_heuristic(spectrum, config.beta, config.n_samples, mc_seed)
        outputs = surrogate.to_moments().to_dict()
        outputs.update(surrogate_mean=surrogate.mean, surrogate_stderr=surrogate.stderr)
    else:
        outputs = overlap_keyhole_leading(spectrum, config.beta).to_dict()
    outputs["lambda_max"] = spectrum.lambda_max
    return seed, outputs


def _overlap_summary(config: RunConfig, records: List[TrialRecord], failures: int) -> Dict[str, Any]:
    if not records:
        return {}
    summary: Dict[str, Any] = {"method": config.method, "m2": summarize(_column(records, "m2"))}
    for key in ("m4", "central4", "abs1"):
        values = _finite(_column(records, key))
        if values.size:
            summary[key] = summarize(values)
    if config.method == "bldw":
        summary["surrogate_mean"] = summarize(_column(records, "surrogate_mean"))
        summary["term_linear"] = summarize(_column(records, "term_linear"))
    flags = [r.outputs["event_f"] for r in records if "event_f" in r.outputs]
    if flags:
        summary["event_f_fraction"] = fraction(flags)
    median = math.nan
    if config.method == "contour" and config.n >= 2:
        on_event = [r for r in records if r.outputs.get("event_f")]
        summary["residual_m2"] = summarize(_column(records, "residual_m2"))
        summary["residual_central4"] = summarize(_column(records, "residual_central4"))
        summary["event_f_trials"] = len(on_event)
        if on_event:
            median = float(np.median(_column(on_event, "residual_m2")))
            summary["residual_central4_median_event_f"] = float(
                np.median(_column(on_event, "residual_central4"))
            )
        summary["violating_trials"] = sum(1 for r in records if r.outputs.get("violations"))
    summary["residual_m2_median_event_f"] = median
    return summary


# ------------------------------------------------------------------
# xi
# ------------------------------------------------------------------


def _validate_xi(config: RunConfig) -> None:
    kind = _kind(config, EnsembleKind.GOE_TRIDIAG)
    if kind.is_tridiagonal and config.n < 2:
        raise ConfigError("tridiagonal ensembles need n >= 2")
    estimator = XiEstimator.parse(config.estimator)
    if estimator is XiEstimator.FULL_SPECTRUM:
        if config.n < 2:
            raise ConfigError("the full-spectrum estimator needs n >= 2")
        for name in ("cutoff", "compare_cutoff"):
            if getattr(config, name) is not None:
                raise ConfigError(f"{name} needs the CUTOFF estimator")
        return
    for name in ("cutoff", "compare_cutoff"):
        value = getattr(config, name)
        if value is None:
            if name == "cutoff":
                raise ConfigError("the CUTOFF estimator needs a cutoff")
            continue
        if value < 1 or (value > 1 and value >= config.n):
            raise ConfigError(f"{name} must lie in [1, n) for n={config.n}, got {value}")


def _xi_trial(config: RunConfig, index: int) -> Tuple[int, Outputs]:
    seed = derive_seed(config.master_seed, index, ROLE_AIRY)
    kind = _kind(config, EnsembleKind.GOE_TRIDIAG)
    estimator = XiEstimator.parse(config.estimator)
    if estimator is XiEstimator.FULL_SPECTRUM:
        estimate = xi_estimate(sample_spectrum(kind, config.n, seed), estimator)
        return seed, {"xi": estimate.value, **estimate.to_dict()}
    cutoff = int(config.cutoff)
    depth = max(cutoff, config.compare_cutoff or 0)
    top = top_eigenvalues(kind, config.n, seed, depth)
    estimate = xi_cutoff_from_top(top, config.n, cutoff, seed)
    outputs: Outputs = {"xi": estimate.value, **estimate.to_dict()}
    if config.compare_cutoff is not None:
        other = xi_cutoff_from_top(top, config.n, int(config.compare_cutoff), seed)
        outputs.update(xi_compare=other.value, xi_shift=estimate.value - other.value)
    return seed, outputs


def _xi_summary(config: RunConfig, records: List[TrialRecord], failures: int) -> Dict[str, Any]:
    if not records:
        return {}
    summary: Dict[str, Any] = {"estimator": config.estimator, "xi": summarize(_column(records, "xi"))}
    if config.compare_cutoff is not None:
        shifts = np.abs(_column(records, "xi_shift"))
        summary["abs_shift"] = summarize(shifts)
        summary["stable_fraction"] = fraction(shifts <= XI_STABLE_TOL)
    return summary


# ------------------------------------------------------------------
# counting
# ------------------------------------------------------------------


def _validate_counting(config: RunConfig) -> None:
    kind = config.kind if config.kind is not None else EnsembleKind.GOE_TRIDIAG
    sampler_kind, _ = counting.resolve_kind(kind)
    if sampler_kind.is_tridiagonal and config.n < 2:
        raise ConfigError("tridiagonal ensembles need n >= 2")
    counting.validate_t_grid(config.n, config.t_grid)
    _require_trials(config, counting.MIN_TRIALS, "counting")


def _counting_label(config: RunConfig) -> str:
    return config.kind if config.kind is not None else EnsembleKind.GOE_TRIDIAG.value


def _counting_trial(config: RunConfig, index: int) -> Tuple[int, Outputs]:
    seed = derive_seed(config.master_seed, index, ROLE_SPECTRUM)
    counts = counting.counting_trial(_counting_label(config), config.n, config.t_grid, seed)
    return seed, {"t_grid": list(config.t_grid), "counts": counts}


def _counting_stats(config: RunConfig, records: List[TrialRecord]) -> Optional[counting.CountingStats]:
    if len(records) < 2:
        return None
    return counting.counting_stats_from_counts(
        [r.outputs["counts"] for r in records], config.t_grid, _counting_label(config), config.n
    )


def _counting_summary(config: RunConfig, records: List[TrialRecord], failures: int) -> Dict[str, Any]:
    stats = _counting_stats(config, records)
    if stats is None:
        return {}
    return {
        "ensemble": stats.ensemble,
        "trials": stats.trials,
        "t_grid": stats.t_grid,
        "empirical_mean": stats.empirical_mean,
        "empirical_var": stats.empirical_var,
        "reference_mean": stats.reference_mean,
        "reference_variance": stats.reference_variance,
        "max_abs_mean_offset": float(np.max(np.abs(stats.mean_offset))),
    }


def _counting_table(config: RunConfig, records: List[TrialRecord]) -> Optional[pd.DataFrame]:
    stats = _counting_stats(config, records)
    return stats.to_frame() if stats is not None else None


# ------------------------------------------------------------------
# fr-check
# ------------------------------------------------------------------


def _validate_fr(config: RunConfig) -> None:
    if config.k_max is not None and config.k_max < 1:
        raise ConfigError(f"k_max must be positive, got {config.k_max}")
    if not config.t_grid:
        raise ConfigError("fr-check needs a non-empty t_grid")
    _require_trials(config, decimation.MIN_TRIALS, "fr-check")


def _fr_trial(config: RunConfig, index: int) -> Tuple[int, Outputs]:
    draw = decimation.decimation_trial(
        config.n,
        config.master_seed,
        index,
        k_max=config.k_max or decimation.DEFAULT_K_MAX,
        t_grid=config.t_grid,
        match_variance=config.match_variance,
    )
    return derive_seed(config.master_seed, index, ROLE_GOE_N), draw.to_dict()


def _fr_summary(config: RunConfig, records: List[TrialRecord], failures: int) -> Dict[str, Any]:
    if not records:
        return {}
    draws = [decimation.DecimationTrial.from_dict(r.outputs) for r in records]
    report = decimation.decimation_report(config.n, draws, config.t_grid)
    return {**report.to_dict(), "max_ks": report.max_ks, "match_variance": config.match_variance}


# ------------------------------------------------------------------
# zerodiag
# ------------------------------------------------------------------


def _zerodiag_k(config: RunConfig) -> int:
    return config.k_max if config.k_max is not None else min(max_k(config.n), config.n)


def _validate_zerodiag(config: RunConfig) -> None:
    limit = min(max_k(config.n), config.n)
    if not 1 <= _zerodiag_k(config) <= limit:
        raise ConfigError(f"k_max must lie in [1, {limit}] for n={config.n}")
    z = _z_grid(config)
    if z.size:
        lo, hi = stieltjes_window(config.n, config.delta)
        if np.any(z.imag < lo) or np.any(z.imag > hi):
            raise ConfigError(f"z_grid imaginary parts must lie in [{lo:.4g}, {hi:.4g}] for n={config.n}")


def _zerodiag_trial(config: RunConfig, index: int) -> Tuple[int, Outputs]:
    seed = derive_seed(config.master_seed, index, ROLE_SPECTRUM)
    pair = sample_coupled_pair(config.n, seed)
    report = ev_diff_report(pair, _zerodiag_k(config))
    outputs: Outputs = report.to_dict()
    outputs.update(diff1=float(report.per_index_diffs[0]), weyl_ok=weyl_check(pair))
    z = _z_grid(config)
    if z.size:
        diffs = stieltjes_diff(pair, z, delta=config.delta)
        bounds = np.atleast_1d(stieltjes_bound(config.n, z))
        outputs.update(
            z_grid=[[w.real, w.imag] for w in z.tolist()],
            stieltjes_diffs=[[d.real, d.imag] for d in diffs.tolist()],
            stieltjes_bounds=bounds,
            stieltjes_within=bool(np.all(np.abs(diffs) <= bounds)),
        )
    return seed, outputs


def _zerodiag_summary(config: RunConfig, records: List[TrialRecord], failures: int) -> Dict[str, Any]:
    if not records:
        return {}
    diff1 = _column(records, "diff1")
    threshold = config.n**ZERODIAG_EXPONENT
    summary: Dict[str, Any] = {
        "diff1": summarize(diff1),
        "diff1_median": float(np.median(diff1)),
        "diff1_q99": float(np.quantile(diff1, 0.99)),
        "threshold": threshold,
        "below_threshold_fraction": fraction(diff1 <= threshold),
        "weyl_fraction": fraction(r.outputs["weyl_ok"] for r in records),
    }
    within = [r.outputs["stieltjes_within"] for r in records if "stieltjes_within" in r.outputs]
    if within:
        summary["stieltjes_within_fraction"] = fraction(within)
    return summary


# ------------------------------------------------------------------
# mainconv
# ------------------------------------------------------------------


def _n_airy(config: RunConfig) -> int:
    return config.n_airy if config.n_airy is not None else mainconv.AIRY_FACTOR * config.n


def _validate_mainconv(config: RunConfig) -> None:
    mainconv.check_regime(config.beta, config.n, _n_airy(config), config.observable, config.enforce_regime)
    contour_spec(config)


def _mainconv_trial(config: RunConfig, index: int) -> Tuple[int, Outputs]:
    a_value, b_value = mainconv.mainconv_trial(
        config.beta,
        config.n,
        _n_airy(config),
        config.master_seed,
        index,
        spec=contour_spec(config),
        observable=config.observable,
    )
    return derive_seed(config.master_seed, index, ROLE_OVERLAP), {"a": a_value, "b": b_value}


def _mainconv_summary(config: RunConfig, records: List[TrialRecord], failures: int) -> Dict[str, Any]:
    if not records:
        return {}
    report = mainconv.mainconv_from_samples(
        config.beta,
        config.n,
        _n_airy(config),
        _column(records, "a"),
        _column(records, "b"),
        observable=config.observable,
        failures=failures,
    )
    return report.to_dict()


# ------------------------------------------------------------------
# gap-tail
# ------------------------------------------------------------------


def _validate_gap_tail(config: RunConfig) -> None:
    if config.n < 2:
        raise ConfigError("gap-tail needs n >= 2")
    _kind(config, EnsembleKind.GOE_TRIDIAG)
    if not config.s_grid or any(s <= 0 for s in config.s_grid):
        raise ConfigError("s_grid must be a non-empty list of positive values")
    _require_trials(config, MIN_GAP_SAMPLES, "gap-tail")


def _gap_tail_trial(config: RunConfig, index: int) -> Tuple[int, Outputs]:
    seed = derive_seed(config.master_seed, index, ROLE_SPECTRUM)
    top = top_eigenvalues(_kind(config, EnsembleKind.GOE_TRIDIAG), config.n, seed, 2)
    return seed, {"lambda_max": float(top[0]), "scaled_gap": config.n ** (2.0 / 3.0) * float(top[0] - top[1])}


def _gap_tail_table(config: RunConfig, records: List[TrialRecord]) -> Optional[pd.DataFrame]:
    if not records:
        return None
    return gap_tail_from_gaps(_column(records, "scaled_gap"), config.s_grid, config.n).to_frame()


def _gap_tail_summary(config: RunConfig, records: List[TrialRecord], failures: int) -> Dict[str, Any]:
    if not records:
        return {}
    gaps = _column(records, "scaled_gap")
    tail = gap_tail_from_gaps(gaps, config.s_grid, config.n)
    return {
        "scaled_gap": summarize(gaps),
        "s_grid": tail.s_grid,
        "cdf": tail.cdf,
        "stderr": tail.stderr,
        "linear_ratio": tail.linear_ratio(),
        "samples": tail.samples,
    }


BUILTIN_EXPERIMENTS = (
    ExperimentSpec(
        Experiment.SAMPLE,
        _as_config_error(_validate_sample),
        _sample_trial,
        _sample_summary,
        description="spectra with edge statistics and event F flags",
    ),
    ExperimentSpec(
        Experiment.OVERLAP,
        _as_config_error(_validate_overlap),
        _overlap_trial,
        _overlap_summary,
        sweep_metric="residual_m2_median_event_f",
        seed_role=ROLE_OVERLAP,
        description="overlap moments by contour, expansion, Monte Carlo, surrogate or keyhole",
    ),
    ExperimentSpec(
        Experiment.XI,
        _as_config_error(_validate_xi),
        _xi_trial,
        _xi_summary,
        seed_role=ROLE_AIRY,
        description="edge variable estimates",
    ),
    ExperimentSpec(
        Experiment.COUNTING,
        _as_config_error(_validate_counting),
        _counting_trial,
        _counting_summary,
        table=_counting_table,
        description="edge counting statistics against reference curves",
    ),
    ExperimentSpec(
        Experiment.FR_CHECK,
        _as_config_error(_validate_fr),
        _fr_trial,
        _fr_summary,
        seed_role=ROLE_GOE_N,
        description="even decimation of GOE_n and GOE_n+1 against GUE_n",
    ),
    ExperimentSpec(
        Experiment.ZERODIAG,
        _as_config_error(_validate_zerodiag),
        _zerodiag_trial,
        _zerodiag_summary,
        sweep_metric="diff1_median",
        description="eigenvalue and Stieltjes shifts from removing the GOE diagonal",
    ),
    ExperimentSpec(
        Experiment.MAINCONV,
        _as_config_error(_validate_mainconv),
        _mainconv_trial,
        _mainconv_summary,
        seed_role=ROLE_OVERLAP,
        description="overlap fluctuations against the edge variable",
    ),
    ExperimentSpec(
        Experiment.GAP_TAIL,
        _as_config_error(_validate_gap_tail),
        _gap_tail_trial,
        _gap_tail_summary,
        table=_gap_tail_table,
        description="small-gap tail of the scaled top spacing",
    ),
)


__all__ = ["BUILTIN_EXPERIMENTS", "contour_spec"]
