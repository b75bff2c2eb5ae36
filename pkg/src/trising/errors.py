"""Exception hierarchy. Every domain error names the offending element."""


class TriError(Exception):
    """Base class for all domain errors."""


class ValidationError(TriError):
    """A complex violates one of the structural invariants."""


class DegenerateTriple(ValidationError):
    pass


class DuplicateTriple(ValidationError):
    pass


class EdgeInWrongNumberOfTriples(ValidationError):
    pass


class PinchedVertex(ValidationError):
    pass


class NonOrientable(ValidationError):
    pass


class DisconnectedComplex(ValidationError):
    pass


class InvalidMark(ValidationError):
    pass


class InvalidEulerCharacteristic(TriError):
    pass


class IndexOutOfRange(TriError):
    pass


class EdgeLeftWithoutFace(TriError):
    pass


class InvalidGluingSpec(TriError):
    pass


class NoValidOrientation(TriError):
    pass


class ResultInvalid(TriError):
    pass


class NotClosed(TriError):
    pass


class LengthMismatch(TriError):
    pass


class NoSatisfyingState(TriError):
    pass


class NotSatisfying(TriError):
    pass


class NotAPerfectMatching(TriError):
    pass


class ResourceLimit(TriError):
    pass


class BaseNotUniquelySatisfiable(TriError):
    pass


class RemovalIncreasesSolutions(TriError):
    pass


class RemovalInvalid(TriError):
    pass


class CertificationLost(TriError):
    pass


class NoSupportingDataAvailable(TriError):
    pass


class GenusMismatch(TriError):
    pass


class FormatError(TriError):
    """A file does not parse as one of the supported schemas."""
