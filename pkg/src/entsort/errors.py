"""Exception types raised across the package."""


class DimensionError(ValueError):
    """Operands have incompatible shapes."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class DependentSystemError(DomainError):
    """A matrix system handed to Gram-Schmidt is numerically dependent."""

    def __init__(self, index, residual):
        self.index = index
        self.residual = residual
        super().__init__(
            f"system is linearly dependent at index {index} "
            f"(residual norm {residual:.3e})"
        )


class NumericError(ArithmeticError):
    """A numerical routine failed to produce a trustworthy result."""


class StateError(ValueError):
    """Wraps a failure on one member of a state collection."""

    def __init__(self, index, cause):
        self.index = index
        self.cause = cause
        super().__init__(f"state {index}: {cause}")
