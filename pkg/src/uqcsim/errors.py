"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class ValidationError(ValueError):
    """A supplied object violates a structural invariant (e.g. non-unitary gate)."""


class CapacityError(ValueError):
    """The requested instance exceeds what dense simulation can handle."""


class UnsupportedModeError(ValueError):
    """The requested combination of options is not supported."""
