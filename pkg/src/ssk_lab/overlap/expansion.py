from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, Tuple

from ..ensembles.records import SpectrumSample
from ..enums import KeyholeKind, MomentMethod
from ..errors import InvalidArgumentError, OutOfRegimeError, PreconditionViolatedError
from ..saddle.keyhole import keyhole_closed_form
from ..saddle.phase import SaddleFrame
from ..spectral.diagnostics import edge_statistics, event_flags
from .moments import OverlapMoments, q_value

"""Low-temperature expansions of the overlap moments in the edge sums
m̃_N(λ₁) and m̃′_N(λ₁), plus the leading-order keyhole evaluation."""

logger = logging.getLogger(__name__)

FOURTH_MOMENT_FORMS = ("stated", "consistent")


@dataclass(frozen=True)
class ExpansionReport:
    """Individual terms of the second and fourth moment expansions."""

    q2: float
    term_linear: float
    term_mprime: float
    term_square: float
    predicted_error_scale: float
    m4_direct: float
    central4_stated: float
    central4_consistent: float
    abs1: float
    fourth_moment_form: str = "stated"
    event_f: bool = True
    forced: bool = False

    @property
    def m2(self) -> float:
        return self.q2 + self.term_linear + self.term_mprime + self.term_square

    @property
    def central4(self) -> float:
        return self.central4_stated if self.fourth_moment_form == "stated" else self.central4_consistent

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def expansion_terms(
    m_tilde: float,
    m_tilde_prime: float,
    beta: float,
    n: int,
    *,
    delta: float = 0.1,
    eps1: float = 0.02,
    fourth_moment_form: str = "stated",
) -> ExpansionReport:
    """All expansion terms from the edge sums at λ₁.

    Raises:
        OutOfRegimeError: ``beta <= 1``.
        InvalidArgumentError: unknown ``fourth_moment_form`` or ``n < 1``.
    """
    if beta <= 1:
        raise OutOfRegimeError(f"the expansion needs beta > 1, got {beta}")
    if n < 1:
        raise InvalidArgumentError(f"n must be positive, got {n}")
    if fourth_moment_form not in FOURTH_MOMENT_FORMS:
        raise InvalidArgumentError(
            f"fourth_moment_form must be one of {FOURTH_MOMENT_FORMS}, got {fourth_moment_form!r}"
        )
    b1 = beta - 1.0
    q = q_value(beta)
    x = m_tilde + 1.0
    mprime_n = m_tilde_prime / n
    return ExpansionReport(
        q2=q * q,
        term_linear=2.0 * b1 / beta**2 * x,
        term_mprime=-mprime_n / beta**2,
        term_square=x * x / beta**2,
        predicted_error_scale=float(n ** (3.0 * delta + 10.0 * eps1 - 1.0)),
        m4_direct=q**4
        + 4.0 * b1**3 * x / beta**4
        + 6.0 * b1**2 * x * x / beta**4
        + 6.0 * b1**2 * mprime_n / beta**4,
        central4_stated=8.0 * b1**2 / beta**2 * mprime_n + 4.0 * b1**2 / beta**4 * x * x,
        central4_consistent=8.0 * b1**2 / beta**4 * mprime_n + 4.0 * b1**2 / beta**4 * x * x,
        abs1=q + x / beta,
        fourth_moment_form=fourth_moment_form,
    )


def overlap_expansion(
    spectrum: SpectrumSample,
    beta: float,
    *,
    delta: float = 0.1,
    eps1: float = 0.02,
    rigidity_constant: float = 1.0,
    force: bool = False,
    fourth_moment_form: str = "stated",
) -> Tuple[OverlapMoments, ExpansionReport]:
    """Expansion moments; the spectrum must lie in the event F unless forced.

    Raises:
        PreconditionViolatedError: event F fails and ``force`` is false.
    """
    if beta <= 1:
        raise OutOfRegimeError(f"the expansion needs beta > 1, got {beta}")
    flags = event_flags(spectrum, delta, eps1, rigidity_constant=rigidity_constant)
    if not flags.event_f and not force:
        raise PreconditionViolatedError(
            f"spectrum seed={spectrum.seed} n={spectrum.n} is outside event F "
            f"(gap_ok={flags.gap_ok}, rigidity_ok={flags.rigidity_ok})"
        )
    stats = edge_statistics(spectrum)
    report = expansion_terms(
        stats.m_tilde,
        stats.m_tilde_prime,
        beta,
        spectrum.n,
        delta=delta,
        eps1=eps1,
        fourth_moment_form=fourth_moment_form,
    )
    forced = not flags.event_f
    if forced:
        logger.warning("expansion forced outside event F (seed=%s, n=%d)", spectrum.seed, spectrum.n)
        report = ExpansionReport(**{**report.to_dict(), "event_f": False, "forced": True})
    m2 = report.m2
    q2 = report.q2
    central4 = report.central4
    moments = OverlapMoments(
        m2=m2,
        m4=central4 + 2.0 * q2 * m2 - q2 * q2,
        central4=central4,
        abs1=report.abs1,
        method=MomentMethod.EXPANSION,
        err=math.inf if forced else report.predicted_error_scale,
        beta=float(beta),
        n=spectrum.n,
        seed=spectrum.seed,
        extras={"event_f": flags.event_f, "m4_direct": report.m4_direct},
    )
    return moments, report


def overlap_keyhole_leading(spectrum: SpectrumSample, beta: float) -> OverlapMoments:
    """m2 from the local model e^{au}(1 + u/b)^{−1/2}(1 + εu²) of the weight.

    u = N(z − γ), a = (β + m̃_N(γ))/2, b = c_β, ε = m̃′_N(γ)/(4N).  The top
    eigenvalue contributes (I₁/D)² through the keyhole identities, the rest
    of the spectrum m̃′_N(γ)/(β²N).
    """
    frame = SaddleFrame.from_spectrum(spectrum, beta)
    if frame.a <= 0:
        raise OutOfRegimeError(f"keyhole model needs a = (beta + m_tilde(gamma))/2 > 0, got a={frame.a}")
    a, b = frame.a, frame.b
    eps = frame.m_tilde_prime_at_gamma / (4.0 * frame.n)
    numerator = keyhole_closed_form(KeyholeKind.INV_POW_3_2, a, b) + eps * keyhole_closed_form(
        KeyholeKind.INV_POW_3_2_Z2, a, b
    )
    denominator = keyhole_closed_form(KeyholeKind.INV_SQRT, a, b) + eps * keyhole_closed_form(
        KeyholeKind.INV_SQRT_Z2, a, b
    )
    top = (numerator / denominator).real / frame.beta
    bulk = frame.m_tilde_prime_at_gamma / (frame.beta**2 * frame.n)
    return OverlapMoments(
        m2=top * top + bulk,
        method=MomentMethod.KEYHOLE_LEADING,
        err=math.nan,
        beta=frame.beta,
        n=frame.n,
        seed=spectrum.seed,
        extras={"top_weight": top, "a": a, "b": b},
    )


__all__ = [
    "ExpansionReport",
    "FOURTH_MOMENT_FORMS",
    "expansion_terms",
    "overlap_expansion",
    "overlap_keyhole_leading",
]
