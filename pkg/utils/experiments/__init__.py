"""Experiment utilities (size sweeps)."""

from .sweeper import SizeSweep, run_size_sweep  # noqa: F401

__all__ = ["SizeSweep", "run_size_sweep"]
