"""Exception hierarchy shared by every module."""


class AffineCellsError(ValueError):
    """Base class for all library errors."""


class ResidueClash(AffineCellsError):
    pass


class SumNotDivisible(AffineCellsError):
    pass


class IndexOutOfRange(AffineCellsError):
    pass


class RankMismatch(AffineCellsError):
    pass


class ParseError(AffineCellsError):
    pass


class LimitExceeded(AffineCellsError):
    """A computation would exceed its configured length budget."""


class DegreeViolation(AffineCellsError):
    """An h-coefficient has degree above a(v): an internal inconsistency."""


class NotInStarDomain(AffineCellsError):
    pass


class RankTooSmall(AffineCellsError):
    pass


class NotAdmissible(AffineCellsError):
    pass


class NotMember(AffineCellsError):
    pass


class PreconditionViolated(AffineCellsError):
    pass


class NotDominant(AffineCellsError):
    pass


class EmptySubset(AffineCellsError):
    pass


class NegativeDegree(AffineCellsError):
    pass


class LengthMismatch(AffineCellsError):
    pass


class ShapeMismatch(AffineCellsError):
    pass


class NotInSubring(AffineCellsError):
    pass
