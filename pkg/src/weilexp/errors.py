"""Exception hierarchy.

Validation problems derive from :class:`ValueError` so callers that only
care about "bad input" can catch that.
"""


class WeilexpError(Exception):
    pass


class ProfileError(WeilexpError, ValueError):
    pass


class NonPrimeCharacteristic(ProfileError):
    pass


class NonMonotoneExponents(ProfileError):
    pass


class MalformedRelation(ProfileError):
    pass


class DeskScaleExceeded(ProfileError):
    pass


class ProfileMismatch(WeilexpError, ValueError):
    pass


class SizeMismatch(WeilexpError, ValueError):
    pass


class IndexOutOfRange(WeilexpError, IndexError):
    pass


class NotAUnit(WeilexpError, ArithmeticError):
    pass


class NotNilpotent(WeilexpError, ArithmeticError):
    pass


class NotInIdeal(WeilexpError, ValueError):
    pass


class NotUpperTriangular(WeilexpError, ValueError):
    pass


class ExponentExceedsBound(WeilexpError):
    """No p-power of the matrix vanished within the allowed range.

    For matrices with entries in the maximal ideal this means a proven
    upper bound was violated, i.e. a bug somewhere.
    """


class TrivialExtension(WeilexpError, ValueError):
    pass


class WitnessVanished(WeilexpError):
    pass


class WrongCharacteristic(WeilexpError, ValueError):
    pass


class TooFewGenerators(WeilexpError, ValueError):
    pass


class UnknownFamily(WeilexpError, ValueError):
    pass


class InconsistentRules(WeilexpError):
    pass
