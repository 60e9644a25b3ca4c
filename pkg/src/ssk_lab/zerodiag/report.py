from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike

from ..ensembles.records import CoupledPair
from ..ensembles.sampler import sample_coupled_pair
from ..errors import InvalidArgumentError
from ..spectral.semicircle import stieltjes_semicircle
from ..spectral.stieltjes import stieltjes

"""Coupled comparison of a GOE matrix H with its zero-diagonal version M.

Top eigenvalues differ by at most N^ε/N for i ≤ N^{1/20}, and the empirical
Stieltjes transforms by (N^ε/(Nη))(1/(Nη) + Im m_sc(z)) inside the window
N^δ/N ≤ η ≤ N^{−δ}.
"""

logger = logging.getLogger(__name__)

DEFAULT_DELTA = 0.1
WEYL_TOL = 1e-12


def max_k(n: int) -> int:
    """Largest admissible number of compared top indices."""
    return max(1, int(math.floor(n ** (1.0 / 20.0))) + 4)


def stieltjes_window(n: int, delta: float = DEFAULT_DELTA) -> tuple[float, float]:
    """(N^δ/N, N^{−δ}): the admissible range of Im z."""
    return n**delta / n, n ** (-delta)


def stieltjes_bound(n: int, z: complex | ArrayLike, eps: float = 0.1) -> np.ndarray | float:
    """(n^ε/(nη))(1/(nη) + Im m_sc(z))."""
    zz = np.asarray(z, dtype=complex)
    eta = zz.imag
    if np.any(eta <= 0):
        raise InvalidArgumentError("the Stieltjes bound needs Im z > 0")
    n_eta = n * eta
    out = n**eps / n_eta * (1.0 / n_eta + np.imag(stieltjes_semicircle(zz)))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class DiffReport:
    n: int
    k_max: int
    per_index_diffs: np.ndarray
    seed: int
    z_grid: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))
    stieltjes_diffs: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))
    max_abs_diagonal: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "k_max": self.k_max,
            "seed": self.seed,
            "per_index_diffs": self.per_index_diffs.tolist(),
            "z_grid": [[z.real, z.imag] for z in self.z_grid.tolist()],
            "stieltjes_diffs": [[d.real, d.imag] for d in self.stieltjes_diffs.tolist()],
            "max_abs_diagonal": self.max_abs_diagonal,
        }


def ev_diff_report(pair: CoupledPair, k_max: int) -> DiffReport:
    """|λᵢ(H) − λᵢ(M)| for i ≤ k_max.

    Raises:
        InvalidArgumentError: k_max outside [1, max(1, ⌊n^{1/20}⌋ + 4)] or above n.
    """
    n = pair.n
    limit = min(max_k(n), n)
    if not 1 <= k_max <= limit:
        raise InvalidArgumentError(f"k_max must lie in [1, {limit}] for n={n}, got {k_max}")
    diffs = np.abs(pair.spectrum_h.eigenvalues[:k_max] - pair.spectrum_m.eigenvalues[:k_max])
    return DiffReport(
        n=n,
        k_max=int(k_max),
        per_index_diffs=diffs,
        seed=pair.seed,
        max_abs_diagonal=pair.max_abs_diagonal,
    )


def stieltjes_diff(
    pair: CoupledPair,
    z_grid: Sequence[complex] | ArrayLike,
    *,
    delta: float = DEFAULT_DELTA,
    check_window: bool = True,
) -> np.ndarray:
    """m_M(z) − m_H(z) on *z_grid*.

    Points far from the real axis (e.g. z = 1000i, where both transforms are
    close to −1/z) fall outside the window and need ``check_window=False``.

    Raises:
        InvalidArgumentError: a grid point outside N^δ/N ≤ Im z ≤ N^{−δ}
            (checked unless ``check_window`` is false; Im z > 0 is always required).
    """
    z = np.atleast_1d(np.asarray(z_grid, dtype=complex))
    if check_window:
        lo, hi = stieltjes_window(pair.n, delta)
        if np.any(z.imag < lo) or np.any(z.imag > hi):
            raise InvalidArgumentError(f"Im z must lie in [{lo:.4g}, {hi:.4g}] for n={pair.n}")
    return stieltjes(pair.spectrum_m, z) - stieltjes(pair.spectrum_h, z)


def weyl_check(pair: CoupledPair) -> bool:
    """|λᵢ(H) − λᵢ(M)| ≤ max|Vᵢᵢ| for every i (Weyl's perturbation bound)."""
    gaps = np.abs(pair.spectrum_h.eigenvalues - pair.spectrum_m.eigenvalues)
    return bool(np.all(gaps <= pair.max_abs_diagonal + WEYL_TOL))


def zerodiag_trial(
    n: int,
    seed: int,
    k_max: Optional[int] = None,
    z_grid: Optional[Sequence[complex]] = None,
    *,
    delta: float = DEFAULT_DELTA,
) -> DiffReport:
    """Sample a coupled pair and build its report."""
    pair = sample_coupled_pair(n, seed)
    report = ev_diff_report(pair, k_max if k_max is not None else min(max_k(n), n))
    if z_grid is None or len(z_grid) == 0:
        return report
    z = np.atleast_1d(np.asarray(z_grid, dtype=complex))
    diffs = stieltjes_diff(pair, z, delta=delta)
    return DiffReport(
        n=report.n,
        k_max=report.k_max,
        per_index_diffs=report.per_index_diffs,
        seed=report.seed,
        z_grid=z,
        stieltjes_diffs=diffs,
        max_abs_diagonal=report.max_abs_diagonal,
    )


__all__ = [
    "DiffReport",
    "ev_diff_report",
    "max_k",
    "stieltjes_bound",
    "stieltjes_diff",
    "stieltjes_window",
    "weyl_check",
    "zerodiag_trial",
]
