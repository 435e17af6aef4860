"""Exception types raised across the package."""


class MTCLError(Exception):
    """Base class for all package errors."""


class GridError(MTCLError, ValueError):
    """Malformed grid, incommensurate grids or non-finite samples."""


class ImproperFunctionError(MTCLError, ValueError):
    """A function that is +inf everywhere on its grid."""


class ConvexityError(MTCLError, ValueError):
    """An operand that must be convex is not."""


class NumericalError(MTCLError, RuntimeError):
    """Base class for failures of a numerical scheme (exit code 3 in the CLI)."""


class TruncationError(NumericalError):
    """The finite grid is too narrow for an exact minimizer search."""


class CFLError(NumericalError):
    """A finite-volume step was requested with a time step above the CFL limit."""

    def __init__(self, dt, dt_max):
        self.dt = dt
        self.dt_max = dt_max
        super().__init__(f"CFL condition violated: dt={dt!r} exceeds admissible dt={dt_max!r}")


class ConfigError(MTCLError, ValueError):
    """Invalid scenario file or command line (exit code 2 in the CLI)."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"{message}, line {line}"
        super().__init__(message)
