from __future__ import annotations

"""Exception hierarchy shared by every ssk_lab module.

Callers catch :class:`LabError` for anything raised on purpose by the
library; the CLI maps the subclasses onto exit codes.
"""


class LabError(Exception):
    """Base class for all library errors."""


class InvalidArgumentError(LabError, ValueError):
    """An argument violates the operation's preconditions."""


class ConfigError(InvalidArgumentError):
    """A run configuration failed validation before any work started."""


class OutOfRegimeError(InvalidArgumentError):
    """The inverse temperature lies outside the low-temperature phase β > 1."""


class DegenerateSpectrumError(LabError, ValueError):
    """The top eigenvalue is not simple (λ₁ = λ₂)."""


class BranchCutError(LabError, ValueError):
    """A logarithm was evaluated on its branch cut."""


class NumericFailureError(LabError, ArithmeticError):
    """An eigensolver, root finder or quadrature did not converge."""

    def __init__(
        self,
        message: str,
        *,
        seed: int | None = None,
        achieved_error: float | None = None,
    ):
        super().__init__(message)
        self.seed = seed
        self.achieved_error = achieved_error

    def __str__(self) -> str:  # noqa: D401
        parts = [super().__str__()]
        if self.seed is not None:
            parts.append(f"seed={self.seed}")
        if self.achieved_error is not None:
            parts.append(f"achieved_error={self.achieved_error:.3e}")
        return " | ".join(parts)


class PreconditionViolatedError(LabError):
    """The spectrum is outside the event on which an expansion is valid."""


class InfeasibleRegimeError(LabError):
    """Rejection sampling acceptance is too low for the requested (n, β)."""


class BatchFailedError(LabError):
    """Every trial of a batch failed."""

    def __init__(self, message: str, *, failures: int = 0):
        super().__init__(message)
        self.failures = failures


__all__ = [
    "LabError",
    "InvalidArgumentError",
    "ConfigError",
    "OutOfRegimeError",
    "DegenerateSpectrumError",
    "BranchCutError",
    "NumericFailureError",
    "PreconditionViolatedError",
    "InfeasibleRegimeError",
    "BatchFailedError",
]
