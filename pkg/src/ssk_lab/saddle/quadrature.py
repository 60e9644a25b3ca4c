from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, Mapping, Optional

import numpy as np
from scipy.integrate import quad_vec
from scipy.optimize import brentq

from ..errors import InvalidArgumentError, NumericFailureError
from .phase import SaddleFrame

"""Adaptive quadrature along the vertical line Re z = γ.

The line is integrated in the rescaled variable u = N(z − γ).  Above a cut
height the line is replaced by the horizontal ray Im z = cut, Re z → −∞,
which Cauchy's theorem allows because the weight is analytic off the real
axis and decays to the left; the truncated tail is therefore carried
exactly and its size is reported.
"""

logger = logging.getLogger(__name__)

WeightFn = Callable[[complex], complex]
FactorFn = Callable[[complex], Any]

# log(1e-16): the weight is considered negligible below this
LOG_NEGLIGIBLE = math.log(1e-16)

# quad_vec status for "target precision could not be reached due to rounding error"
ROUNDING_LIMITED = 2


@dataclass(frozen=True)
class ContourSpec:
    """Quadrature controls shared by every contour integral."""

    truncation_height: float = 10.0
    panel_target_error: float = 1e-10
    max_panels: int = 2000
    absolute_floor: float = 1e-14

    def __post_init__(self) -> None:
        if not self.truncation_height > 0:
            raise InvalidArgumentError(f"truncation_height must be positive, got {self.truncation_height}")
        if not 0 < self.panel_target_error <= 1e-6:
            raise InvalidArgumentError(
                f"panel_target_error must lie in (0, 1e-6], got {self.panel_target_error}"
            )
        if int(self.max_panels) != self.max_panels or self.max_panels < 1:
            raise InvalidArgumentError(f"max_panels must be a positive integer, got {self.max_panels}")
        if not self.absolute_floor > 0:
            raise InvalidArgumentError(f"absolute_floor must be positive, got {self.absolute_floor}")

    @classmethod
    def from_mapping(cls, data: Optional[Mapping[str, Any]] = None, **overrides: Any) -> "ContourSpec":
        values: Dict[str, Any] = dict(data or {})
        values.update(overrides)
        unknown = set(values) - set(cls.__dataclass_fields__)
        if unknown:
            raise InvalidArgumentError(f"unknown contour settings: {sorted(unknown)}")
        return cls(**values)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def pack_complex(value: Any) -> np.ndarray:
    """Complex scalar/array -> real vector [re..., im...] for quad_vec."""
    arr = np.atleast_1d(np.asarray(value, dtype=complex))
    return np.concatenate([arr.real, arr.imag])


def unpack_complex(packed: np.ndarray) -> np.ndarray:
    half = packed.shape[0] // 2
    return packed[:half] + 1j * packed[half:]


@dataclass(frozen=True)
class VerticalLineResult:
    """Value of ∫_{γ−i∞}^{γ+i∞} e^{w(z)}·factor(z) dz and its diagnostics."""

    value: np.ndarray
    abs_error: float
    tail: float
    cut_height: float
    evaluations: int

    @property
    def scalar(self) -> complex:
        return complex(self.value[0])


def _cut_height(weight_exponent: WeightFn, frame: SaddleFrame, height: float) -> float:
    """Smaller of *height* and the height where Re w(γ + it) = log 1e-16."""

    def excess(t: float) -> float:
        return float(np.real(weight_exponent(frame.gamma + 1j * t))) - LOG_NEGLIGIBLE

    if excess(height) >= 0.0:
        return height
    # Re w decreases monotonically along the line
    return brentq(excess, 0.0, height, xtol=1e-12 * height, maxiter=200)


def tolerance_met(res: np.ndarray, err: float, spec: ContourSpec) -> bool:
    """Whether *err* is inside the absolute or relative target for *res*."""
    scale = max(float(np.max(np.abs(res))) if np.size(res) else 0.0, 1.0)
    return float(err) <= max(spec.absolute_floor, spec.panel_target_error * scale)


def check_quad_vec(res: np.ndarray, err: float, info: Any, spec: ContourSpec, what: str) -> None:
    """Raise unless quad_vec converged.

    A rounding-limited exit (status 2, typical when the true value is 0) is
    accepted when the reported error still meets the target.

    Raises:
        NumericFailureError: any other unsuccessful exit.
    """
    if info.success:
        return
    if info.status == ROUNDING_LIMITED and np.all(np.isfinite(res)) and tolerance_met(res, err, spec):
        logger.debug("%s: rounding-limited exit accepted (err %.2e)", what, err)
        return
    raise NumericFailureError(f"{what} did not converge ({info.message})", achieved_error=float(err))


def _integrate(fn: Callable[[float], np.ndarray], lo: float, hi: float, spec: ContourSpec, points=None):
    res, err, info = quad_vec(
        fn,
        lo,
        hi,
        epsabs=spec.absolute_floor,
        epsrel=spec.panel_target_error,
        limit=spec.max_panels,
        points=points,
        full_output=True,
    )
    check_quad_vec(res, err, info, spec, "vertical line quadrature")
    return unpack_complex(res), float(err), int(info.neval)


def _half_path(
    weight_exponent: WeightFn,
    factor: FactorFn,
    frame: SaddleFrame,
    spec: ContourSpec,
    cut: float,
    sign: float,
):
    """∫ over γ → γ ± i·cut → −∞ ± i·cut in u units (without the 1/N)."""
    n = frame.n
    gamma = frame.gamma
    top = n * cut

    def along_line(u: float) -> np.ndarray:
        z = gamma + sign * 1j * u / n
        return pack_complex(np.exp(weight_exponent(z)) * np.asarray(factor(z)) * (sign * 1j))

    def along_ray(s: float) -> np.ndarray:
        z = gamma + (sign * 1j * top - s) / n
        return pack_complex(-np.exp(weight_exponent(z)) * np.asarray(factor(z)))

    scale = frame.c_beta
    points = [p for p in (scale / 4.0, scale, 4.0 * scale, 16.0 * scale, 64.0 * scale) if p < top]
    line, err_line, ev_line = _integrate(along_line, 0.0, top, spec, points or None)
    ray, err_ray, ev_ray = _integrate(along_ray, 0.0, np.inf, spec)
    return line + ray, err_line + err_ray, float(np.max(np.abs(ray))), ev_line + ev_ray


def vertical_line_integral(
    weight_exponent: Optional[WeightFn],
    factor: Optional[FactorFn],
    frame: SaddleFrame,
    spec: Optional[ContourSpec] = None,
    *,
    real_analytic: bool = True,
) -> VerticalLineResult:
    """∫_{γ−i∞}^{γ+i∞} exp(weight_exponent(z))·factor(z) dz.

    *weight_exponent* defaults to ``frame.log_weight``; *factor* may return a
    vector, in which case every component is integrated on the same panels.
    With ``real_analytic`` (f(z̄) = conj f(z)) only the upper half is
    integrated and the line equals 2i·Im of the half-path integral.

    Raises:
        NumericFailureError: quadrature did not reach the requested tolerance.
    """
    spec = spec or ContourSpec()
    weight = weight_exponent or frame.log_weight
    fac: FactorFn = factor if factor is not None else (lambda z: 1.0)
    cut = _cut_height(weight, frame, spec.truncation_height)

    upper, err, tail, evals = _half_path(weight, fac, frame, spec, cut, 1.0)
    if real_analytic:
        value = 2j * upper.imag
        err *= 2.0
        tail *= 2.0
    else:
        lower, err_low, tail_low, ev_low = _half_path(weight, fac, frame, spec, cut, -1.0)
        value = upper - lower
        err += err_low
        tail += tail_low
        evals += ev_low
    inv_n = 1.0 / frame.n
    logger.debug(
        "vertical line: n=%d cut=%.3g evals=%d err=%.2e tail=%.2e",
        frame.n,
        cut,
        evals,
        err * inv_n,
        tail * inv_n,
    )
    return VerticalLineResult(
        value=value * inv_n,
        abs_error=err * inv_n,
        tail=tail * inv_n,
        cut_height=cut,
        evaluations=evals,
    )


__all__ = [
    "ContourSpec",
    "LOG_NEGLIGIBLE",
    "ROUNDING_LIMITED",
    "VerticalLineResult",
    "check_quad_vec",
    "pack_complex",
    "tolerance_met",
    "unpack_complex",
    "vertical_line_integral",
]
