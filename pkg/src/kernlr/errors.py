"""Exception types shared across the package.

Plain ``ValueError`` is used for ordinary argument errors; the classes here
mark conditions a caller may want to handle separately.
"""


class DegenerateDataError(ValueError):
    """Data admits no meaningful answer (e.g. coincident points, constant column)."""


class HypothesisError(ValueError):
    """Decay-hypothesis parameters violate their admissibility conditions."""


class CapabilityError(ValueError):
    """The request is valid but outside the supported range of this implementation."""


class EigensolverError(RuntimeError):
    """The dense symmetric eigensolver failed to converge."""
