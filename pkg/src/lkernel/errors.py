"""Error types shared across the package.

Poles are signalled with an explicit exception rather than by returning
Inf/NaN, so that callers can distinguish "evaluated at a pole" from an
overflow or a convergence failure.
"""


class PoleError(ArithmeticError):
    """Evaluation requested exactly at a pole of the function."""


class ConvergenceError(ArithmeticError):
    """An iteration or refinement failed to reach the requested tolerance."""


class TailBoundError(ConvergenceError):
    """A certified tail bound cannot be met within the allowed work caps."""
