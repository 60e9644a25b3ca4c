from __future__ import annotations

import logging
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike
from scipy import linalg

from ..errors import InvalidArgumentError, NumericFailureError

"""Eigensolvers returning spectra in non-increasing order.

Dense input goes through LAPACK's symmetric driver (Householder reduction
followed by an implicit-shift iteration); tridiagonal input uses the
dedicated tridiagonal routines, with Sturm-sequence bisection when only the
top of the spectrum is requested.
"""

logger = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-12


def eigen_sym(matrix: ArrayLike, *, seed: Optional[int] = None) -> np.ndarray:
    """Eigenvalues of a real symmetric (or complex Hermitian) matrix.

    Args:
        matrix: square array, symmetric within ``SYMMETRY_TOL`` componentwise.
        seed: provenance attached to :class:`NumericFailureError`.

    Returns:
        Eigenvalues sorted non-increasing.

    Raises:
        InvalidArgumentError: non-square, non-finite or asymmetric input.
        NumericFailureError: the LAPACK iteration did not converge.
    """
    a = np.asarray(matrix)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidArgumentError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] == 0:
        raise InvalidArgumentError("matrix must be at least 1x1")
    if not np.all(np.isfinite(a)):
        raise InvalidArgumentError("matrix contains non-finite entries")
    asym = np.max(np.abs(a - a.conj().T))
    if asym > SYMMETRY_TOL:
        raise InvalidArgumentError(f"matrix is not symmetric (max |A - A^T| = {asym:.3e})")

    try:
        values = linalg.eigvalsh(a, check_finite=False)
    except linalg.LinAlgError as exc:
        logger.error("Dense eigensolver failed (seed=%s): %s", seed, exc)
        raise NumericFailureError(f"eigensolver did not converge: {exc}", seed=seed) from exc
    return np.ascontiguousarray(values[::-1])


def eigen_tridiagonal(
    diagonal: ArrayLike,
    off_diagonal: ArrayLike,
    *,
    top_k: Optional[int] = None,
    seed: Optional[int] = None,
) -> np.ndarray:
    """Eigenvalues of a symmetric tridiagonal matrix, non-increasing.

    With *top_k* only the ``top_k`` largest eigenvalues are computed by
    bisection on Sturm sequences.
    """
    d = np.asarray(diagonal, dtype=float)
    e = np.asarray(off_diagonal, dtype=float)
    n = d.shape[0]
    if n == 0 or e.shape[0] != n - 1:
        raise InvalidArgumentError(
            f"inconsistent tridiagonal shapes: diagonal {d.shape}, off-diagonal {e.shape}"
        )
    try:
        if n == 1:
            values = d.copy()
        elif top_k is None or top_k >= n:
            values = linalg.eigvalsh_tridiagonal(d, e, check_finite=False)
        else:
            if top_k < 1:
                raise InvalidArgumentError(f"top_k must be >= 1, got {top_k}")
            values = linalg.eigvalsh_tridiagonal(
                d,
                e,
                select="i",
                select_range=(n - top_k, n - 1),
                check_finite=False,
                lapack_driver="stebz",
            )
    except linalg.LinAlgError as exc:
        logger.error("Tridiagonal eigensolver failed (seed=%s): %s", seed, exc)
        raise NumericFailureError(f"eigensolver did not converge: {exc}", seed=seed) from exc
    return np.ascontiguousarray(np.sort(values)[::-1])


__all__ = ["eigen_sym", "eigen_tridiagonal", "SYMMETRY_TOL"]
