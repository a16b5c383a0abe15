"""Exception hierarchy.

The command-line front end maps these onto exit codes: ``InputError`` -> 1,
``ResourceLimitError`` -> 2, ``InternalInvariantBroken`` -> 3.
"""


class ToricStackError(Exception):
    """Base class for all library errors."""


class InputError(ToricStackError, ValueError):
    """The input data does not satisfy an operation's precondition."""


class ResourceLimitError(ToricStackError):
    """A configured size bound (Hilbert basis, face count) was exceeded."""


class InternalInvariantBroken(ToricStackError):
    """Two independent computations disagree. Always a bug."""


class NotPointed(InputError):
    pass


class NotSharp(InputError):
    pass


class NotSaturated(InputError):
    pass


class NotFullGroup(InputError):
    pass


class NotAFace(InputError):
    pass


class NotAMorphism(InputError):
    pass


class NotExact(InputError):
    pass


class InvalidDatum(InputError):
    pass


class InfiniteGroupError(InputError):
    pass


class NotFaithful(InputError):
    pass


class HypothesisViolated(InputError):
    pass


class RayConditionViolated(InputError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"beta(rho_{index + 1}) does not lie on ray {index + 1}")


class MarkingOutsideFan(InputError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"extra marking {index + 1} lies in no cone of the fan")


class NotAFan(InputError):
    def __init__(self, cones, message):
        self.cones = cones
        super().__init__(message)


class ConeNotMaximal(InputError):
    pass


class ConeNotFullDimensional(InputError):
    pass


class TorsionNotSupported(InputError):
    pass
