"""Robust values of weighted timed games under perturbation."""

from fractions import Fraction

from ._wtg import (
    Game,
    InputError,
    NonConvergent,
    NotAcyclic,
    PerturbationTooLarge,
    PreconditionError,
    Solution,
    check,
    load_game,
    oracle,
    parse_game,
    solve,
    to_excessive,
)

__all__ = [
    "Game",
    "InputError",
    "NonConvergent",
    "NotAcyclic",
    "PerturbationTooLarge",
    "PreconditionError",
    "Solution",
    "check",
    "load_game",
    "oracle",
    "parse_game",
    "solve",
    "to_excessive",
    "to_number",
    "value",
]


def to_number(text):
    """Fraction for a finite value, +/-inf as float."""
    if text in ("inf", "-inf"):
        return float(text)
    return Fraction(text)


def value(solution, location, valuation, p):
    """Value at (location, valuation) for perturbation p; arguments may be Fractions."""
    v = {k: str(Fraction(x)) for k, x in valuation.items()}
    return to_number(solution.value(location, v, str(Fraction(p))))
