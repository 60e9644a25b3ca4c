from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np
from numpy.typing import ArrayLike

from ..enums import EnsembleKind
from ..errors import DegenerateSpectrumError, InvalidArgumentError

"""Spectrum containers and their JSON-lines representation."""


@dataclass(frozen=True, eq=False)
class SpectrumSample:
    """One sorted eigenvalue realization with its provenance.

    ``eigenvalues`` is stored read-only and sorted non-increasing, so
    ``eigenvalues[0]`` is λ₁.
    """

    kind: EnsembleKind
    n: int
    seed: int
    eigenvalues: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.eigenvalues, dtype=float, copy=True)
        if values.ndim != 1 or values.shape[0] != self.n:
            raise InvalidArgumentError(
                f"expected {self.n} eigenvalues, got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise InvalidArgumentError("eigenvalues must be finite")
        if np.any(np.diff(values) > 0):
            raise InvalidArgumentError("eigenvalues must be sorted non-increasing")
        values.setflags(write=False)
        object.__setattr__(self, "eigenvalues", values)
        object.__setattr__(self, "kind", EnsembleKind.parse(self.kind))

    # ------------------------------------------------------------------
    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def top_gap(self) -> float:
        """λ₁ − λ₂ (``inf`` for a single eigenvalue)."""
        if self.n < 2:
            return float("inf")
        return float(self.eigenvalues[0] - self.eigenvalues[1])

    def require_simple_top(self) -> None:
        """Raise :class:`DegenerateSpectrumError` unless λ₁ > λ₂."""
        if self.n >= 2 and not self.eigenvalues[0] > self.eigenvalues[1]:
            raise DegenerateSpectrumError(
                f"λ₁ = λ₂ = {self.lambda_max!r} (kind={self.kind.value}, n={self.n}, seed={self.seed})"
            )

    def same_as(self, other: "SpectrumSample") -> bool:
        """Bit-exact equality of provenance and eigenvalues."""
        return (
            self.kind is other.kind
            and self.n == other.n
            and self.seed == other.seed
            and self.eigenvalues.tobytes() == other.eigenvalues.tobytes()
        )

    # ------------------------------------------------------------------
    def to_record(self) -> Dict[str, Any]:
        """JSON-lines payload ``{kind, n, seed, eigenvalues}``.

        Floats are emitted through ``repr``, which round-trips doubles exactly.
        """
        return {
            "kind": self.kind.value,
            "n": self.n,
            "seed": self.seed,
            "eigenvalues": [float(x) for x in self.eigenvalues],
        }

    @classmethod
    def from_record(cls, record: Dict[str, Any]) -> "SpectrumSample":
        return cls(
            kind=EnsembleKind.parse(record["kind"]),
            n=int(record["n"]),
            seed=int(record["seed"]),
            eigenvalues=np.asarray(record["eigenvalues"], dtype=float),
        )


def spectrum_from_values(
    values: ArrayLike,
    kind: EnsembleKind | str = EnsembleKind.GOE_DENSE,
    seed: int = 0,
) -> SpectrumSample:
    """Wrap arbitrary eigenvalues (any order) as a SpectrumSample."""
    arr = np.sort(np.asarray(values, dtype=float).ravel())[::-1]
    if arr.size == 0:
        raise InvalidArgumentError("at least one eigenvalue is required")
    return SpectrumSample(kind=EnsembleKind.parse(kind), n=int(arr.size), seed=seed, eigenvalues=arr)


@dataclass(frozen=True, eq=False)
class CoupledPair:
    """GOE spectrum of H and zero-diagonal spectrum of M = H − V from one draw."""

    spectrum_h: SpectrumSample
    spectrum_m: SpectrumSample
    seed: int
    diagonal: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.spectrum_h.n != self.spectrum_m.n:
            raise InvalidArgumentError("coupled spectra must have the same size")
        diag = np.array(self.diagonal, dtype=float, copy=True)
        if diag.shape != (self.spectrum_h.n,):
            raise InvalidArgumentError(f"diagonal must have length {self.spectrum_h.n}")
        diag.setflags(write=False)
        object.__setattr__(self, "diagonal", diag)

    @property
    def n(self) -> int:
        return self.spectrum_h.n

    @property
    def max_abs_diagonal(self) -> float:
        return float(np.max(np.abs(self.diagonal)))


__all__ = ["SpectrumSample", "CoupledPair", "spectrum_from_values"]
