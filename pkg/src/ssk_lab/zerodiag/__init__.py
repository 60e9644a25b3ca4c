"""GOE versus zero-diagonal GOE comparison."""

from .report import (
    DiffReport,
    ev_diff_report,
    max_k,
    stieltjes_bound,
    stieltjes_diff,
    stieltjes_window,
    weyl_check,
    zerodiag_trial,
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
