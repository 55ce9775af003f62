"""Exception types shared across the package."""


class MpkitError(Exception):
    """Base class for all domain errors."""


class NotComposableError(MpkitError):
    """Arrows or boxes were combined where no composite is defined."""


class NotConnectedError(MpkitError):
    """An operation required a connected groupoid."""


class NotExactError(MpkitError):
    """A subgroupoid pair does not give an exact factorization."""


class BoundExceededError(MpkitError):
    """An enumeration exceeded its configured size bound."""


class InvalidPairError(MpkitError):
    """A cocycle pair fails the grid compatibility or cocycle conditions."""


class NoSolutionError(MpkitError):
    """A coboundary equation has no solution (classes differ)."""


class IncompatibleDataError(MpkitError):
    """Cocycle data does not satisfy the required restriction identity."""


class CocycleNotTrivialOnVError(MpkitError):
    """The ambient 3-cocycle is not trivial on the distinguished subgroupoid."""


class MismatchedCarrierError(MpkitError):
    """Objects over different carriers were combined."""


class NotFusionError(MpkitError):
    """Unit object is not simple (vertical groupoid disconnected)."""


class DecompositionFailedError(MpkitError):
    """Numerical decomposition failed a tolerance or integrality certificate."""
