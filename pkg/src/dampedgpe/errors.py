"""Exception types shared across the package."""


class DampedGpeError(Exception):
    """Base class for all package errors."""


class ConfigurationError(DampedGpeError, ValueError):
    """Invalid parameter or configuration value."""


class GridMismatchError(DampedGpeError, ValueError):
    """Fields or tables defined on incompatible grids."""


class PropagationDivergedError(DampedGpeError, ArithmeticError):
    """Non-finite values appeared during time stepping."""

    def __init__(self, t, dt):
        self.t = t
        self.dt = dt
        super().__init__(
            f"propagation diverged near t = {t:.6g} with step dt = {dt:.3g}; "
            f"check the stability product |lambda|*dt against the 0.03 limit"
        )


class EigensolverError(DampedGpeError, RuntimeError):
    """Dense eigendecomposition failed."""
