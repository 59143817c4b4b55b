"""Exception hierarchy shared across the package."""


class SelfDualError(Exception):
    """Base class for all domain errors raised by this package."""


# --- map construction / validation ---------------------------------------

class NonInvolutiveTwin(SelfDualError):
    """Dart set is not a disjoint union of twin pairs 2i, 2i+1."""


class DisconnectedMap(SelfDualError):
    """Rotation system describes a disconnected map."""


class EulerViolation(SelfDualError):
    """Face count is inconsistent with a genus-0 embedding."""


class FormatError(SelfDualError):
    """Malformed map or doodle file."""


class NotPolyhedral(SelfDualError):
    """Operation requires a simple 3-connected map."""


class NotSelfDual(SelfDualError):
    """Operation requires a self-dual map."""


class UnknownVertex(SelfDualError):
    pass


class UnknownFace(SelfDualError):
    pass


# --- coxeter groups and the pairing catalog -------------------------------

class InvalidSymbol(SelfDualError):
    """Bracket symbol outside the spherical catalog."""


class ClosureOverflow(SelfDualError):
    """Group closure exceeded the element cap."""


class NoCatalogMatch(SelfDualError):
    """Symmetry signature matches no catalog pairing."""


class AmbiguousMatch(SelfDualError):
    """Symmetry signature matches several catalog pairings."""


class NotAntipodalPairing(SelfDualError):
    """Fundamental regions exist only for the ten antipodal pairings."""


# --- families --------------------------------------------------------------

class QTooSmall(SelfDualError):
    pass


class BadParams(SelfDualError):
    pass


class FaceNotFound(SelfDualError):
    """An involution formula produced a vertex set that is not a face."""


# --- doodles ---------------------------------------------------------------

class EmptyDoodle(SelfDualError):
    pass


class PointOutsideRegion(SelfDualError):
    pass


class MergeAmbiguity(SelfDualError):
    """Distinct doodle features collide inconsistently under the group action."""


class UnsupportedMap(SelfDualError):
    """No symmetric spherical embedding is known for this map."""


# --- reduction ---------------------------------------------------------------

class NotStronglyInvolutive(SelfDualError):
    pass


class StepFailed(SelfDualError):
    """No delete-contraction candidate succeeded on a non-wheel input."""
