from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from ..enums import EnsembleKind
from ..errors import InvalidArgumentError
from ..spectral.eigen import eigen_sym, eigen_tridiagonal
from .records import CoupledPair, SpectrumSample

"""Samplers for the Gaussian ensembles.

Normalisation: GOE has off-diagonal variance 1/n and diagonal variance 2/n,
GUE has E|H_ij|² = 1/n; both spectra fill [−2, 2].  The tridiagonal models
share that normalisation and have the same eigenvalue law as their dense
counterparts.
"""

logger = logging.getLogger(__name__)

_MASK64 = (1 << 64) - 1


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(int(seed) & _MASK64)


def _check_n(n: int, minimum: int = 1) -> int:
    if isinstance(n, bool) or int(n) != n or n < minimum:
        raise InvalidArgumentError(f"n must be an integer >= {minimum}, got {n!r}")
    return int(n)


# ------------------------------------------------------------------
# matrix draws
# ------------------------------------------------------------------


def goe_matrix(rng: np.random.Generator, n: int) -> np.ndarray:
    """Dense GOE draw (A + Aᵀ)/√(2n) with A standard normal."""
    a = rng.standard_normal((n, n))
    return (a + a.T) / math.sqrt(2.0 * n)


def gue_matrix(rng: np.random.Generator, n: int) -> np.ndarray:
    """Dense GUE draw with E|H_ij|² = 1/n."""
    a = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2.0)
    return (a + a.conj().T) / math.sqrt(2.0 * n)


def goe_tridiagonal(rng: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal N(0, 2)/√n and off-diagonals χ_{n−1}, …, χ_1 over √n."""
    diagonal = rng.standard_normal(n) * math.sqrt(2.0 / n)
    dof = np.arange(n - 1, 0, -1, dtype=float)
    off = np.sqrt(rng.chisquare(dof)) / math.sqrt(n)
    return diagonal, off


def gue_tridiagonal(rng: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal N(0, 1)/√n and off-diagonals χ_{2(n−1)}, …, χ_2 over √(2n)."""
    diagonal = rng.standard_normal(n) / math.sqrt(n)
    dof = 2.0 * np.arange(n - 1, 0, -1, dtype=float)
    off = np.sqrt(rng.chisquare(dof)) / math.sqrt(2.0 * n)
    return diagonal, off


def _eigenvalues(kind: EnsembleKind, n: int, seed: int, top_k: int | None = None) -> np.ndarray:
    rng = _rng(seed)
    if kind is EnsembleKind.GOE_DENSE:
        values = eigen_sym(goe_matrix(rng, n), seed=seed)
    elif kind is EnsembleKind.GOE_ZERO_DIAG:
        h = goe_matrix(rng, n)
        np.fill_diagonal(h, 0.0)
        values = eigen_sym(h, seed=seed)
    elif kind is EnsembleKind.GUE_DENSE:
        values = eigen_sym(gue_matrix(rng, n), seed=seed)
    elif kind is EnsembleKind.GOE_TRIDIAG:
        d, e = goe_tridiagonal(rng, n)
        return eigen_tridiagonal(d, e, top_k=top_k, seed=seed)
    elif kind is EnsembleKind.GUE_TRIDIAG:
        d, e = gue_tridiagonal(rng, n)
        return eigen_tridiagonal(d, e, top_k=top_k, seed=seed)
    else:  # pragma: no cover - exhaustive over the enum
        raise InvalidArgumentError(f"unsupported ensemble {kind}")
    return values if top_k is None else values[:top_k]


# ------------------------------------------------------------------
# public API
# ------------------------------------------------------------------


def sample_spectrum(kind: EnsembleKind | str, n: int, seed: int) -> SpectrumSample:
    """Sorted spectrum of one realization of *kind* at size *n*.

    Raises:
        InvalidArgumentError: ``n < 1`` (``n < 2`` for tridiagonal kinds).
        NumericFailureError: the eigensolver failed; carries *seed*.
    """
    kind = EnsembleKind.parse(kind)
    n = _check_n(n, 2 if kind.is_tridiagonal else 1)
    values = _eigenvalues(kind, n, seed)
    return SpectrumSample(kind=kind, n=n, seed=int(seed), eigenvalues=values)


def top_eigenvalues(kind: EnsembleKind | str, n: int, seed: int, k: int) -> np.ndarray:
    """The *k* largest eigenvalues of ``sample_spectrum(kind, n, seed)``."""
    kind = EnsembleKind.parse(kind)
    n = _check_n(n, 2 if kind.is_tridiagonal else 1)
    k = _check_n(k)
    return _eigenvalues(kind, n, seed, top_k=min(k, n))


def sample_coupled_pair(n: int, seed: int) -> CoupledPair:
    """GOE matrix H and its zero-diagonal part M = H − V from a single draw.

    ``spectrum_h`` equals ``sample_spectrum(GOE_DENSE, n, seed)`` and
    ``spectrum_m`` equals ``sample_spectrum(GOE_ZERO_DIAG, n, seed)``.
    """
    n = _check_n(n)
    h = goe_matrix(_rng(seed), n)
    return coupled_pair_from_matrix(h, seed=seed)


def coupled_pair_from_matrix(h: ArrayLike, seed: int = 0) -> CoupledPair:
    """Build a CoupledPair from an explicit symmetric matrix."""
    h = np.asarray(h, dtype=float)
    diagonal = np.diag(h).copy()
    m = h.copy()
    np.fill_diagonal(m, 0.0)
    n = h.shape[0]
    return CoupledPair(
        spectrum_h=SpectrumSample(EnsembleKind.GOE_DENSE, n, int(seed), eigen_sym(h, seed=seed)),
        spectrum_m=SpectrumSample(EnsembleKind.GOE_ZERO_DIAG, n, int(seed), eigen_sym(m, seed=seed)),
        seed=int(seed),
        diagonal=diagonal,
    )


@dataclass(frozen=True, eq=False)
class MinorInterlacing:
    """Parent GOE_{n+1} spectrum against its top-left n×n minor."""

    parent: np.ndarray
    minor: np.ndarray
    scale: float  # √(n/(n+1)); minor / scale is a GOE_n spectrum

    @property
    def rescaled_minor(self) -> np.ndarray:
        return self.minor / self.scale

    @property
    def interlaces(self) -> bool:
        tol = 1e-12 * max(1.0, float(np.max(np.abs(self.parent))))
        upper = self.parent[:-1] + tol >= self.minor
        lower = self.minor + tol >= self.parent[1:]
        return bool(np.all(upper) and np.all(lower))


def minor_interlacing(n: int, seed: int) -> MinorInterlacing:
    """Draw GOE_{n+1}, remove its first row and column and compare spectra."""
    n = _check_n(n)
    h = goe_matrix(_rng(seed), n + 1)
    parent = eigen_sym(h, seed=seed)
    minor = eigen_sym(h[1:, 1:], seed=seed)
    return MinorInterlacing(parent=parent, minor=minor, scale=math.sqrt(n / (n + 1)))


__all__ = [
    "sample_spectrum",
    "top_eigenvalues",
    "sample_coupled_pair",
    "coupled_pair_from_matrix",
    "minor_interlacing",
    "MinorInterlacing",
    "goe_matrix",
    "gue_matrix",
    "goe_tridiagonal",
    "gue_tridiagonal",
]
