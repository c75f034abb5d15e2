"""Exception hierarchy shared by all modules.

Input problems derive from :class:`InputError` (the CLI maps them to exit
status 2); failed internal checks derive from :class:`VerificationError`
(exit status 1).
"""


class CircddError(Exception):
    """Base class for every error raised by this package."""


class InputError(CircddError, ValueError):
    pass


class VerificationError(CircddError, AssertionError):
    pass


class ZeroResidue(InputError):
    pass


class Disconnected(InputError):
    pass


class DuplicateGenerator(InputError):
    pass


class InvalidDimension(InputError):
    pass


class UnsupportedDegree(InputError):
    pass


class DiameterTooSmall(InputError):
    pass


class DiameterBelowThreshold(InputError):
    def __init__(self, degree: int, k: int, threshold: int):
        super().__init__(
            f"degree {degree} family requires diameter k >= {threshold} (got {k})"
        )
        self.degree = degree
        self.k = k
        self.threshold = threshold


class ResidueClassUnavailable(InputError):
    pass


class CeilingBelowKnownWitness(InputError):
    pass


class TooLarge(InputError):
    pass


class NotAUnit(InputError):
    pass


class UnstableClassification(VerificationError):
    pass


class InvariantViolated(VerificationError):
    pass


class MethodsDisagree(VerificationError):
    pass


class FamilyVerificationFailed(VerificationError):
    pass
