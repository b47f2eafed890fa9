"""Exception hierarchy shared by all modules.

Every error raised on bad domain input derives from ``DomainError`` so the
command line driver can report it uniformly as ``ERROR <Kind>: <detail>``.
"""


class DomainError(Exception):
    """Base class for all domain errors raised by this library."""


# -- scalar field errors -----------------------------------------------------

class DivisionByZero(DomainError):
    pass


class FieldMismatch(DomainError):
    pass


class TameViolation(DomainError):
    """An operation of order n was requested in characteristic p with p | n."""


# -- series errors -----------------------------------------------------------

class ParseError(DomainError):
    """Malformed text input; the message carries the offending position."""


class ExponentDenominatorExceedsN(DomainError):
    pass


class VariableOutOfRange(DomainError):
    pass


class ArityMismatch(DomainError):
    pass


class NotAUnit(DomainError):
    pass


class NotUnitTimesMonomial(DomainError):
    pass


class LeadingCoefficientRootInvalid(DomainError):
    pass


class OrderExceedsTruncation(DomainError):
    pass


# -- Kummer covering errors --------------------------------------------------

class BadRadicandShape(DomainError):
    pass


class MissingRootsOfUnity(DomainError):
    pass


class LeadingCoefficientHasNoRoot(DomainError):
    pass


# -- graph errors ------------------------------------------------------------

class NotInvolution(DomainError):
    pass


class LegLabelNotBijective(DomainError):
    pass


class Disconnected(DomainError):
    pass


class UnstablePair(DomainError):
    pass


# -- ribbon / tangent errors -------------------------------------------------

class NotTrivalent(DomainError):
    pass


class NotMaxDegenerate(DomainError):
    pass


class PointsNotDistinct(DomainError):
    pass


class CharacteristicTwo(DomainError):
    pass
