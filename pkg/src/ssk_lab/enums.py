from __future__ import annotations

from enum import Enum

"""Common enums used across the lab."""


class _ParsableEnum(Enum):
    @classmethod
    def parse(cls, value: "str | _ParsableEnum"):
        """Accept a member, its value or its name (case-insensitive)."""
        if isinstance(value, cls):
            return value
        text = str(value).strip()
        name = text.upper().replace("-", "_")
        for member in cls:
            if text == member.value or name == member.name:
                return member
        # deferred import keeps this module dependency-free for the errors module
        from .errors import InvalidArgumentError

        raise InvalidArgumentError(f"unknown {cls.__name__}: {value!r}")


class EnsembleKind(_ParsableEnum):
    """Random-matrix ensembles the samplers produce."""

    GOE_DENSE = "GOE_DENSE"
    GOE_ZERO_DIAG = "GOE_ZERO_DIAG"
    GUE_DENSE = "GUE_DENSE"
    GOE_TRIDIAG = "GOE_TRIDIAG"
    GUE_TRIDIAG = "GUE_TRIDIAG"

    @property
    def is_tridiagonal(self) -> bool:
        return self in (EnsembleKind.GOE_TRIDIAG, EnsembleKind.GUE_TRIDIAG)

    @property
    def is_unitary(self) -> bool:
        return self in (EnsembleKind.GUE_DENSE, EnsembleKind.GUE_TRIDIAG)


class KeyholeKind(_ParsableEnum):
    """Integrands e^{az}(z+b)^{-ν}·(1 or z²) with a closed-form keyhole integral."""

    INV_SQRT = "INV_SQRT"
    SQRT = "SQRT"
    POW_3_2 = "POW_3_2"
    INV_SQRT_Z2 = "INV_SQRT_Z2"
    INV_POW_3_2 = "INV_POW_3_2"
    INV_POW_3_2_Z2 = "INV_POW_3_2_Z2"
    INV_POW_5_2 = "INV_POW_5_2"
    INV_POW_5_2_Z2 = "INV_POW_5_2_Z2"


class MomentMethod(_ParsableEnum):
    """How an OverlapMoments value was produced."""

    CONTOUR_EXACT = "CONTOUR_EXACT"
    EXPANSION = "EXPANSION"
    MONTE_CARLO = "MONTE_CARLO"
    BLDW_HEURISTIC = "BLDW_HEURISTIC"
    KEYHOLE_LEADING = "KEYHOLE_LEADING"


class XiEstimator(_ParsableEnum):
    FULL_SPECTRUM = "FULL_SPECTRUM"
    CUTOFF = "CUTOFF"


class Experiment(_ParsableEnum):
    """Experiment tags understood by the harness and the CLI."""

    SAMPLE = "sample"
    OVERLAP = "overlap"
    XI = "xi"
    COUNTING = "counting"
    FR_CHECK = "fr-check"
    ZERODIAG = "zerodiag"
    MAINCONV = "mainconv"
    GAP_TAIL = "gap-tail"


__all__ = [
    "EnsembleKind",
    "KeyholeKind",
    "MomentMethod",
    "XiEstimator",
    "Experiment",
]
