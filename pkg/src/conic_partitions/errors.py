"""Exception hierarchy shared by all modules."""


class GeometryError(ValueError):
    pass


class UnsupportedField(GeometryError):
    pass


class NotOddPrime(UnsupportedField):
    pass


class ReducibleModulus(GeometryError):
    pass


class DegreeMismatch(GeometryError):
    pass


class FieldMismatch(GeometryError):
    pass


class DivisionByZero(GeometryError, ZeroDivisionError):
    pass


class EqualArguments(GeometryError):
    pass


class LineThroughYInfinity(GeometryError):
    pass


class EqualIndices(GeometryError):
    pass


class WrongCongruenceClass(GeometryError):
    pass


class NotInternalIndex(GeometryError):
    pass


class NotExternalPoint(GeometryError):
    pass


class NotOnConic(GeometryError):
    pass


class NotASquare(GeometryError):
    pass


class NotAPartition(GeometryError):
    pass


class InstanceTooLarge(RuntimeError):
    """Raised when a search exceeds its node budget."""

    def __init__(self, message, nodes=None):
        super().__init__(message)
        self.nodes = nodes
