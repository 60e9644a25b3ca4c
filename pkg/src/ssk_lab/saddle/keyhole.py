from __future__ import annotations

import logging
import math
from typing import Callable, Dict, Optional, Tuple

import numpy as np
from scipy.integrate import quad_vec

from ..enums import KeyholeKind
from ..errors import InvalidArgumentError
from .quadrature import ContourSpec, check_quad_vec, pack_complex, unpack_complex

"""Keyhole integrals ∫_Γ e^{az}(z + b)^{−ν}·(1 or z²) dz.

Γ comes in from −∞ below the cut (−∞, −b], circles −b counter-clockwise
and returns to −∞ above the cut.  This orientation is the one a vertical
line Re z = x > −b traversed upwards deforms into, and it fixes the signs
of the closed forms below.
"""

logger = logging.getLogger(__name__)

ComplexFn = Callable[[complex], complex]

SQRT_PI = math.sqrt(math.pi)

# kind -> (ν, multiplied by z²)
_SHAPES: Dict[KeyholeKind, Tuple[float, bool]] = {
    KeyholeKind.INV_SQRT: (0.5, False),
    KeyholeKind.SQRT: (-0.5, False),
    KeyholeKind.POW_3_2: (-1.5, False),
    KeyholeKind.INV_SQRT_Z2: (0.5, True),
    KeyholeKind.INV_POW_3_2: (1.5, False),
    KeyholeKind.INV_POW_3_2_Z2: (1.5, True),
    KeyholeKind.INV_POW_5_2: (2.5, False),
    KeyholeKind.INV_POW_5_2_Z2: (2.5, True),
}

# just off the cut; survives z + b where a signed zero would not
_CUT_OFFSET = 1e-200


def keyhole_exponent(kind: KeyholeKind | str) -> Tuple[float, bool]:
    """(ν, has_z2) for *kind*."""
    return _SHAPES[KeyholeKind.parse(kind)]


def keyhole_closed_form(kind: KeyholeKind | str, a: float, b: float) -> complex:
    """Tabulated value of the keyhole integral of *kind*.

    Raises:
        InvalidArgumentError: unknown kind, ``a <= 0`` or ``b < 0``.
    """
    kind = KeyholeKind.parse(kind)
    if a <= 0:
        raise InvalidArgumentError(f"keyhole integrals need a > 0, got {a}")
    if b < 0:
        raise InvalidArgumentError(f"keyhole integrals need b >= 0, got {b}")
    decay = math.exp(-a * b)
    root_a = math.sqrt(a)
    base = 1j * SQRT_PI * decay / root_a
    if kind is KeyholeKind.INV_SQRT:
        return 2.0 * base
    if kind is KeyholeKind.SQRT:
        return -1j * SQRT_PI * decay * a**-1.5
    if kind is KeyholeKind.POW_3_2:
        return 1.5j * SQRT_PI * decay * a**-2.5
    if kind is KeyholeKind.INV_SQRT_Z2:
        return base * (1.5 / a**2 + 2.0 * b / a + 2.0 * b * b)
    if kind is KeyholeKind.INV_POW_3_2:
        return 4j * SQRT_PI * root_a * decay
    if kind is KeyholeKind.INV_POW_3_2_Z2:
        return base * (-1.0 / a - 4.0 * b + 4.0 * a * b * b)
    if kind is KeyholeKind.INV_POW_5_2:
        return (8.0 / 3.0) * 1j * SQRT_PI * a**1.5 * decay
    if kind is KeyholeKind.INV_POW_5_2_Z2:
        return base * (2.0 - 8.0 * a * b + (8.0 / 3.0) * a * a * b * b)
    raise InvalidArgumentError(f"unknown keyhole kind {kind!r}")  # pragma: no cover


def keyhole_integrand(kind: KeyholeKind | str, a: float, b: float) -> ComplexFn:
    """e^{az}(z + b)^{−ν}·(1 or z²) on the principal branch."""
    nu, with_z2 = keyhole_exponent(kind)

    def integrand(z: complex) -> complex:
        value = np.exp(a * z - nu * np.log(z + b))
        return value * z * z if with_z2 else value

    return integrand


def default_radius(b: float) -> float:
    return b / 12.0 if b > 0 else 0.5


def keyhole_quadrature(
    integrand: ComplexFn,
    a: float,
    b: float,
    r: Optional[float] = None,
    spec: Optional[ContourSpec] = None,
) -> complex:
    """Integrate *integrand* over the keyhole around −b.

    The two rays along the cut are combined into one integral of the jump
    f(−b − s − i0) − f(−b − s + i0) over s ∈ [r, ∞); the circle of radius
    *r* is parametrized by angle.  *a* is only used to check decay.

    Raises:
        InvalidArgumentError: bad radius or ``a <= 0``.
        NumericFailureError: tolerance not met within ``spec.max_panels``.
    """
    spec = spec or ContourSpec()
    if a <= 0:
        raise InvalidArgumentError(f"keyhole quadrature needs a decaying integrand (a > 0), got a={a}")
    r = default_radius(b) if r is None else float(r)
    if r <= 0 or (b > 0 and r >= b / 10.0):
        raise InvalidArgumentError(f"radius must satisfy 0 < r < b/10, got r={r}, b={b}")

    def jump(s: float) -> np.ndarray:
        x = -b - s
        below = integrand(complex(x, -_CUT_OFFSET))
        above = integrand(complex(x, _CUT_OFFSET))
        return pack_complex(below - above)

    def circle(theta: float) -> np.ndarray:
        w = r * np.exp(1j * theta)
        return pack_complex(integrand(-b + w) * 1j * w)

    total = 0j
    achieved = 0.0
    for fn, lo, hi in ((jump, r, np.inf), (circle, -math.pi, math.pi)):
        res, err, info = quad_vec(
            fn,
            lo,
            hi,
            epsabs=spec.absolute_floor,
            epsrel=spec.panel_target_error,
            limit=spec.max_panels,
            full_output=True,
        )
        achieved += float(err)
        check_quad_vec(res, err, info, spec, "keyhole quadrature")
        total += complex(unpack_complex(res))
    logger.debug("keyhole quadrature a=%g b=%g r=%g -> %s (err %.2e)", a, b, r, total, achieved)
    return total


__all__ = [
    "keyhole_closed_form",
    "keyhole_exponent",
    "keyhole_integrand",
    "keyhole_quadrature",
    "default_radius",
]
