"""Typed errors. Everything raised on bad domain input derives from ``DomainError``."""


class DomainError(ValueError):
    pass


class BasisMismatch(DomainError):
    pass


class KindError(DomainError):
    pass


class IntegralityError(DomainError):
    pass


class OrbitCapExceeded(DomainError):
    pass


class EnumerationMismatch(RuntimeError):
    """Raised when two independent enumerations of one family disagree."""


class NotAmple(DomainError):
    pass


class OutsideEffectiveCone(DomainError):
    pass


class OnWall(DomainError):
    pass


class PositionError(DomainError):
    pass
