"""Exception types shared across the package."""


class DegenerateChainError(ValueError):
    """Raised when epsilon = delta = 0 and a unique stationary distribution is required."""


class SizeLimitError(ValueError):
    """Raised when a requested computation exceeds the dense-enumeration budget."""


class NonHermitianError(ValueError):
    """Raised when an operation requires a Hermitian matrix and the input is not one."""


class NotPositiveSemidefiniteError(ValueError):
    """Raised when an operation requires a PSD matrix and an eigenvalue is too negative."""


class DimensionMismatchError(ValueError):
    """Raised when two operands must share a dimension but do not."""


class IncompletePovmError(ValueError):
    """Raised when a claimed POVM does not sum to the identity within tolerance."""
