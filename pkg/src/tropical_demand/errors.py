"""Exception types shared across the package."""


class ToolkitError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateInput(ToolkitError):
    """Input is structurally unusable (zero vector, duplicate bundles, ...)."""


class EmptyCell(ToolkitError):
    """A polyhedron or cell turned out to be empty."""


class UnknownBundle(ToolkitError):
    """A bundle was referenced that the valuation does not contain."""


class UnsupportedDimension(ToolkitError):
    """The operation is only available in a different ambient dimension."""


class NonConservative(ToolkitError):
    """A labeled subdivision is inconsistent with any single potential.

    ``cycle`` lists region ids of a closed adjacency walk witnessing the
    inconsistency, when one is available.
    """

    def __init__(self, message: str, cycle: tuple[int, ...] | None = None):
        super().__init__(message)
        self.cycle = cycle


class DomainError(ToolkitError):
    """An argument lies outside the domain required by the operation."""


class InstanceTooLarge(ToolkitError):
    """An enumeration would exceed the configured size cap."""


class ValidationError(ToolkitError):
    """A parsed document is syntactically valid JSON but semantically broken."""
