from __future__ import annotations

"""Per-trial seed derivation.

``derive_seed(master, trial, role)`` packs ``(trial, role)`` into a 64-bit
key ``trial * 256 + role``, adds it to a scrambled master seed and passes the
sum through the SplitMix64 finaliser.  The finaliser is a bijection on
64-bit words, so for a fixed master distinct ``(trial, role)`` pairs always
map to distinct seeds.  The seed then keys ``numpy.random.default_rng``
at each call site.
"""

MASK64 = (1 << 64) - 1
ROLE_BITS = 8
MAX_ROLE = (1 << ROLE_BITS) - 1
MAX_TRIAL = (1 << (64 - ROLE_BITS)) - 1

_GOLDEN = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB

# stream roles used across the lab
ROLE_SPECTRUM = 0
ROLE_OVERLAP = 1
ROLE_AIRY = 2
ROLE_MONTE_CARLO = 3
ROLE_GOE_N = 4
ROLE_GOE_N1 = 5
ROLE_GUE = 6


def _splitmix64(x: int) -> int:
    z = (x + _GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * _MUL1) & MASK64
    z = ((z ^ (z >> 27)) * _MUL2) & MASK64
    return z ^ (z >> 31)


def derive_seed(master: int, trial: int, role: int = ROLE_SPECTRUM) -> int:
    """Return the 64-bit seed of stream *role* in trial *trial* of run *master*."""
    if not 0 <= role <= MAX_ROLE:
        raise ValueError(f"role must be in [0, {MAX_ROLE}], got {role}")
    if not 0 <= trial <= MAX_TRIAL:
        raise ValueError(f"trial must be in [0, {MAX_TRIAL}], got {trial}")
    key = (trial << ROLE_BITS) | role
    return _splitmix64((_splitmix64(master & MASK64) + key) & MASK64)


__all__ = [
    "derive_seed",
    "ROLE_SPECTRUM",
    "ROLE_OVERLAP",
    "ROLE_AIRY",
    "ROLE_MONTE_CARLO",
    "ROLE_GOE_N",
    "ROLE_GOE_N1",
    "ROLE_GUE",
]
