"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Input data violates a structural invariant."""

    def __init__(self, message, field=None, witness=None):
        super().__init__(message)
        self.field = field
        self.witness = witness


class CapExceeded(RuntimeError):
    """An exhaustive search would exceed the configured size cap."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.size = size
        self.cap = cap


DEFAULT_CAP = 200
