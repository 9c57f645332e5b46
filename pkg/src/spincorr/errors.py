"""Exception types shared across the package.

The CLI maps these onto process exit codes (argument 2, convergence 3,
capacity 4, I/O 5).
"""


class ArgumentError(ValueError):
    """A precondition on user-supplied arguments was violated."""


class CapacityError(RuntimeError):
    """Requested problem size exceeds a hard resource cap."""


class ConvergenceError(RuntimeError):
    """An iterative solver failed to reach its residual target."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class GridBoundaryError(RuntimeError):
    """A scan maximum fell on the grid boundary; the grid is too narrow."""
