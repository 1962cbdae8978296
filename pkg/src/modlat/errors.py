"""Exception hierarchy.

Validation problems map to CLI exit code 2, exhausted caps to exit code 3.
"""


class ModlatError(Exception):
    pass


class ValidationError(ModlatError, ValueError):
    pass


class CapError(ModlatError):
    pass


class RamifiedPrime(ValidationError):
    pass


class NotPrime(ValidationError):
    pass


class NonIntegralElement(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class RankDeficient(ValidationError):
    pass


class CapExceeded(CapError):
    pass


class DimensionCap(CapError):
    pass


class SearchSpaceCap(CapError):
    pass


class PrecisionExhausted(CapError):
    pass
