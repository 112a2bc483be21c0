"""Exception types shared across the package."""


class JTripleError(Exception):
    """Base class for all domain errors."""


class SystemMismatch(JTripleError):
    """Operands are bound to different triple systems."""


class InvalidSystem(JTripleError):
    """Structure tensor has the wrong shape or inconsistent metadata."""


class NotComplexLinear(JTripleError):
    """A realified operator does not commute with multiplication by i."""


class NotATripotent(JTripleError):
    """Element fails the cube identity required of a tripotent."""


class ZeroTripotent(JTripleError):
    """Operation requires a nonzero tripotent."""


class ZeroElement(JTripleError):
    """Operation requires a nonzero element."""


class NotNormOne(JTripleError):
    """Element must have spectral norm one."""


class DegenerateSample(JTripleError):
    """Random generation failed to produce a usable sample after retries."""


class ClusterAmbiguity(JTripleError):
    """Two spectral values fall between roundoff and the cluster gap.

    Tripotent extraction is discontinuous at spectral degeneracies, so the
    caller must pick an explicit gap threshold instead of relying on a
    silent merge.
    """


class UnsupportedSystem(JTripleError):
    """Operation is only defined for a specific system kind."""


class InputError(JTripleError):
    """Malformed serialized input (bad JSON schema, size mismatch)."""


class NormalElementWarning(UserWarning):
    """The commutator seed element is normal, so the map may be a derivation."""
