from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Union

import numpy as np
from numpy.typing import ArrayLike

from ..ensembles.records import SpectrumSample
from ..errors import BranchCutError, InvalidArgumentError, OutOfRegimeError
from ..spectral.diagnostics import edge_sums

"""Phase functions of the contour representation.

G(z) = βz − (1/N) Σ log(z − λᵢ) and its local model
g(z) = (β + m̃_N(γ))z − (1/N) log(1 + Nz/c_β).  Weights are always formed
as exp(N(G(z) − G(γ))/2) through the log1p sum so that e^{NG/2} itself is
never evaluated.
"""

logger = logging.getLogger(__name__)

ComplexLike = Union[complex, ArrayLike]


def c_beta(beta: float) -> float:
    """c_β = 1/(β − 1)."""
    if beta <= 1:
        raise OutOfRegimeError(f"beta must exceed 1, got {beta}")
    return 1.0 / (beta - 1.0)


@dataclass(frozen=True, eq=False)
class SaddleFrame:
    """Saddle point data of one spectrum at inverse temperature β.

    ``gamma = λ₁ + gamma_scale·c_β/N`` (``gamma_scale = 1`` is the saddle);
    ``a = (β + m̃_N(γ))/2`` and ``b = c_β`` parametrize the keyhole model.
    """

    beta: float
    c_beta: float
    gamma: float
    a: float
    b: float
    m_tilde_at_gamma: float
    m_tilde_prime_at_gamma: float
    n: int
    eigenvalues: np.ndarray = field(repr=False)
    gamma_scale: float = 1.0

    @classmethod
    def from_spectrum(
        cls,
        spectrum: SpectrumSample,
        beta: float,
        *,
        gamma_scale: float = 1.0,
    ) -> "SaddleFrame":
        if gamma_scale <= 0:
            raise InvalidArgumentError(f"gamma_scale must be positive, got {gamma_scale}")
        c = c_beta(beta)
        lam = spectrum.eigenvalues
        n = spectrum.n
        gamma = float(lam[0] + gamma_scale * c / n)
        m_gamma, m_prime_gamma = edge_sums(lam, gamma)
        return cls(
            beta=float(beta),
            c_beta=c,
            gamma=gamma,
            a=0.5 * (beta + m_gamma),
            b=c,
            m_tilde_at_gamma=m_gamma,
            m_tilde_prime_at_gamma=m_prime_gamma,
            n=n,
            eigenvalues=lam,
            gamma_scale=float(gamma_scale),
        )

    def with_gamma_scale(self, gamma_scale: float) -> "SaddleFrame":
        """Same spectrum and β with γ = λ₁ + gamma_scale·c_β/N."""
        if gamma_scale <= 0:
            raise InvalidArgumentError(f"gamma_scale must be positive, got {gamma_scale}")
        lam = self.eigenvalues
        gamma = float(lam[0] + gamma_scale * self.c_beta / self.n)
        m_gamma, m_prime_gamma = edge_sums(lam, gamma)
        return replace(
            self,
            gamma=gamma,
            a=0.5 * (self.beta + m_gamma),
            m_tilde_at_gamma=m_gamma,
            m_tilde_prime_at_gamma=m_prime_gamma,
            gamma_scale=float(gamma_scale),
        )

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[0])

    # ------------------------------------------------------------------
    # weights
    # ------------------------------------------------------------------
    def phase_difference(self, z: ComplexLike) -> np.ndarray | complex:
        """G(z) − G(γ) via Σ log1p((z − γ)/(γ − λᵢ))."""
        zz = np.asarray(z, dtype=complex)
        _check_cut(zz, self.lambda_max, "G")
        shift = zz - self.gamma
        ratios = shift[..., None] / (self.gamma - self.eigenvalues)
        logs = np.log1p(ratios).sum(axis=-1) / self.n
        out = self.beta * shift - logs
        return complex(out) if out.ndim == 0 else out

    def log_weight(self, z: ComplexLike) -> np.ndarray | complex:
        """N(G(z) − G(γ))/2."""
        diff = self.phase_difference(z)
        return 0.5 * self.n * diff


def _check_cut(z: np.ndarray, edge: float, name: str) -> None:
    on_cut = (z.imag == 0.0) & (z.real <= edge)
    if np.any(on_cut):
        bad = z[on_cut].ravel()[0] if z.ndim else z
        raise BranchCutError(f"{name}(z) evaluated on its branch cut at z={complex(bad)}")


def phase_G(z: ComplexLike, spectrum: SpectrumSample, beta: float) -> np.ndarray | complex:
    """G(z) = βz − (1/N) Σ log(z − λᵢ) with the principal logarithm."""
    zz = np.asarray(z, dtype=complex)
    lam = spectrum.eigenvalues
    _check_cut(zz, float(lam[0]), "G")
    out = beta * zz - np.log(zz[..., None] - lam).sum(axis=-1) / spectrum.n
    return complex(out) if out.ndim == 0 else out


def phase_G_derivative(z: ComplexLike, spectrum: SpectrumSample, beta: float) -> np.ndarray | complex:
    """G′(z) = β + m_N(z) with m_N(z) = (1/N) Σ 1/(λᵢ − z)."""
    zz = np.asarray(z, dtype=complex)
    lam = spectrum.eigenvalues
    _check_cut(zz, float(lam[0]), "G'")
    out = beta + (1.0 / (lam - zz[..., None])).sum(axis=-1) / spectrum.n
    return complex(out) if out.ndim == 0 else out


def phase_G_difference(z: ComplexLike, frame: SaddleFrame) -> np.ndarray | complex:
    """G(z) − G(γ) for the frame's spectrum, free of cancellation."""
    return frame.phase_difference(z)


def phase_g(z: ComplexLike, frame: SaddleFrame) -> np.ndarray | complex:
    """g(z) = (β + m̃_N(γ))z − (1/N) log(1 + Nz/c_β), z relative to γ."""
    zz = np.asarray(z, dtype=complex)
    arg = 1.0 + frame.n * zz / frame.c_beta
    if np.any((arg.imag == 0.0) & (arg.real <= 0.0)):
        raise BranchCutError("g(z) evaluated on its branch cut z <= -c_beta/N")
    out = 2.0 * frame.a * zz - np.log(arg) / frame.n
    return complex(out) if out.ndim == 0 else out


__all__ = [
    "SaddleFrame",
    "c_beta",
    "phase_G",
    "phase_G_derivative",
    "phase_G_difference",
    "phase_g",
]
