# mds_pir/errors.py
"""Exceptions raised across the library. Each one names a single violated constraint."""


class PirError(Exception):
    """Base class for every error raised by mds_pir."""


class InvalidParams(PirError, ValueError):
    """System parameters (N, T, K, q, scheme) violate a constraint."""


class FieldMismatch(PirError, TypeError):
    """Operands belong to different fields."""


class DivideByZero(PirError, ZeroDivisionError):
    """Inverse of the zero symbol was requested."""


class SingularMatrix(PirError, ValueError):
    pass


class FieldTooSmall(PirError, ValueError):
    """The field has fewer elements than the code needs evaluation points."""


class DimensionMismatch(PirError, ValueError):
    pass


class InsufficientPoints(PirError, ValueError):
    """Fewer than t distinct coordinates were supplied to an MDS decoder."""


class InconsistentPoints(PirError, ValueError):
    """Over-determined decoder input disagrees with the decoded codeword."""


class TooLarge(PirError, ValueError):
    """Exhaustive check requested above its desk-scale cap."""


class IndexOutOfRange(PirError, IndexError):
    pass


class WrongRegime(PirError, ValueError):
    """Operation used outside its rate regime (high rate s >= r, low rate r >= s)."""


class MalformedTranscript(PirError, ValueError):
    """Decoding-set sizes or answer lengths do not match the protocol."""


class EnumerationTooLarge(PirError, ValueError):
    pass


class NodeUnreachable(PirError, ConnectionError):
    pass


class MalformedFrame(PirError, ValueError):
    """Wire frame fails magic, version, type or length checks."""


class ReconstructionMismatch(PirError, AssertionError):
    """Reconstructed message differs from the stored one."""
