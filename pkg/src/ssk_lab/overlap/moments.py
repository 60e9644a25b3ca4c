from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ..enums import MomentMethod
from ..errors import InvalidArgumentError

"""Result container shared by every overlap-moment method."""


def q_value(beta: float) -> float:
    """q = (β − 1)/β, the positive concentration point of |R₁₂|."""
    return (beta - 1.0) / beta


@dataclass(frozen=True)
class OverlapMoments:
    """⟨R₁₂²⟩ and optionally ⟨R₁₂⁴⟩, ⟨(R₁₂² − q²)²⟩, ⟨|R₁₂|⟩.

    ``err`` is method specific: relative quadrature error for
    CONTOUR_EXACT, the predicted error scale for EXPANSION (``inf`` when
    forced off the event), the standard error of m2 for the sampling
    methods, and NaN when no estimate exists.
    """

    m2: float
    method: MomentMethod
    err: float
    beta: float
    n: int
    seed: Optional[int] = None
    m4: Optional[float] = None
    central4: Optional[float] = None
    abs1: Optional[float] = None
    extras: Dict[str, Any] = field(default_factory=dict)

    @property
    def q(self) -> float:
        return q_value(self.beta)

    def invariant_violations(self, tol: float = 1e-8) -> List[str]:
        """Human-readable list of broken moment inequalities."""
        problems: List[str] = []
        if not -tol <= self.m2 <= 1.0 + tol:
            problems.append(f"m2={self.m2!r} outside [0, 1]")
        if self.m4 is not None:
            if not -tol <= self.m4 <= 1.0 + tol:
                problems.append(f"m4={self.m4!r} outside [0, 1]")
            if self.m4 < self.m2 * self.m2 - tol:
                problems.append(f"m4={self.m4!r} < m2^2={self.m2 * self.m2!r}")
        if self.central4 is not None and self.central4 < -tol:
            problems.append(f"central4={self.central4!r} negative")
        return problems

    def to_dict(self) -> Dict[str, Any]:
        def clean(value: Any) -> Any:
            if isinstance(value, float) and not math.isfinite(value):
                return None if math.isnan(value) else repr(value)
            return value

        out: Dict[str, Any] = {
            "method": self.method.value,
            "beta": self.beta,
            "n": self.n,
            "seed": self.seed,
            "m2": self.m2,
            "m4": self.m4,
            "central4": self.central4,
            "abs1": self.abs1,
            "err": clean(self.err),
        }
        for key, value in sorted(self.extras.items()):
            out[key] = clean(value)
        return out


def central_fourth(m2: float, m4: float, beta: float) -> float:
    """⟨(R² − q²)²⟩ = m4 − 2q²m2 + q⁴."""
    q2 = q_value(beta) ** 2
    return m4 - 2.0 * q2 * m2 + q2 * q2


def abs_overlap_bounds(m2: float, central4: float, beta: float) -> Tuple[float, float]:
    """Bounds on ⟨|R₁₂|⟩ from the second and central fourth moments.

    With X = R² and q > 0, √X ≤ q + (X − q²)/(2q) (tangent of a concave
    function) and √X ≥ q + (X − q²)/(2q) − (X − q²)²/(2q³) for X ≥ 0; both
    hold pointwise and survive taking expectations under any measure.
    """
    if beta <= 1:
        raise InvalidArgumentError(f"abs overlap bounds need beta > 1, got {beta}")
    if central4 < 0:
        raise InvalidArgumentError(f"central4 must be non-negative, got {central4}")
    q = q_value(beta)
    upper = q + (m2 - q * q) / (2.0 * q)
    lower = upper - central4 / (2.0 * q**3)
    return lower, upper


__all__ = ["OverlapMoments", "abs_overlap_bounds", "central_fourth", "q_value"]
