"""Exception types shared across the package.

The CLI maps each class to its own exit code.
"""


class DomainError(ValueError):
    """An input lies outside the domain of an operation."""


class CertificationError(RuntimeError):
    """A structural invariant that should hold by construction failed."""


class ResourceError(RuntimeError):
    """A desk-scale guard (enumeration size, degree) was exceeded."""
