"""Utility modules for power-cover."""

from .config import ENGINES, Config, SolverConfig

__all__ = ["ENGINES", "Config", "SolverConfig"]
