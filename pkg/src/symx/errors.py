"""Exception hierarchy shared by every module."""


class SymxError(Exception):
    """Base class for all workbench errors."""


class VariantMismatch(SymxError, TypeError):
    pass


class NoPointBetween(SymxError):
    pass


class ImageNotInIdeal(SymxError):
    pass


class UnsupportedGroupShape(SymxError):
    pass


class NoWitness(SymxError):
    pass


class Unsatisfiable(SymxError):
    pass


class NonTerminating(SymxError):
    pass


class NotAnAntichain(SymxError):
    pass


class NotInIdeal(SymxError):
    pass


class CoordinateOutOfDomain(SymxError):
    pass


class EnumerationBudgetExceeded(SymxError):
    pass


class HSCertificationFailed(SymxError):
    pass


class WellDefinednessFailure(SymxError):
    pass


class NotBased(SymxError, ValueError):
    pass


class ZeroBound(SymxError, ValueError):
    pass


class NotInRange(SymxError, ValueError):
    pass


class LengthMismatch(SymxError, ValueError):
    pass


class OddLength(SymxError, ValueError):
    pass


class UnknownSuite(SymxError):
    pass


class ParseError(SymxError, ValueError):
    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class NotOrderPreserving(VariantMismatch):
    """An automorphism datum that is not a strictly increasing map."""
