"""Pseudospectral Euler-Voigt solver with blow-up-criterion diagnostics."""

from ._core import (
    Field,
    fit_power_law,
    integrate,
    make_initial_condition,
    sweep,
)

__all__ = [
    "Field",
    "fit_power_law",
    "integrate",
    "make_initial_condition",
    "sweep",
]
