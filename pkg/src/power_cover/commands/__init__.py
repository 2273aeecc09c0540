"""Commands for the power-cover CLI."""

from . import gen_command, solve_command, sweep_command

__all__ = ["gen_command", "solve_command", "sweep_command"]
