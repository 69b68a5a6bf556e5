"""Exception types raised across the package."""


class RangeSearchError(Exception):
    """Base class for all errors raised by this package."""


class EmptyInput(RangeSearchError):
    pass


class NonPositiveWeight(RangeSearchError):
    pass


class WrongQueryKind(RangeSearchError):
    pass


class DimensionMismatch(RangeSearchError):
    pass


class UnknownColor(RangeSearchError):
    pass


class BadHierarchy(RangeSearchError):
    pass


class DegenerateInput(RangeSearchError):
    pass


class DuplicateLine(RangeSearchError):
    pass


class TooSmall(RangeSearchError):
    pass


class CapTooSmall(RangeSearchError):
    pass


class NotSingleColor(RangeSearchError):
    pass


class IncompatibleTester(RangeSearchError):
    pass


class BadTau(RangeSearchError):
    pass


class Unsorted(RangeSearchError):
    pass


class UnsortedPart(RangeSearchError):
    pass


class BadThresholds(RangeSearchError):
    pass


class CappedReturnedNullOnYes(RangeSearchError):
    """A capped structure returned NULL for a range its estimator approved."""


class BadSpec(RangeSearchError):
    pass


class BadConfig(RangeSearchError):
    pass
