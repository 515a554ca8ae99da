"""Error types shared across the package.

The command line front end maps these onto process exit codes, so the
distinction between "bad input" and "numerics failed" must be preserved
by everything that raises.
"""


class DomainError(ValueError):
    """An argument violates a documented precondition (exit code 1)."""


class ConvergenceError(RuntimeError):
    """An iterative scheme exhausted its budget (exit code 2).

    Carries the requested and achieved error estimates so callers can
    report how far the computation got.
    """

    def __init__(self, message: str, requested: float, achieved: float):
        super().__init__(f"{message} (requested {requested:g}, achieved {achieved:g})")
        self.requested = requested
        self.achieved = achieved


class ConsistencyError(RuntimeError):
    """Two independent routes to the same number disagree (exit code 2)."""
