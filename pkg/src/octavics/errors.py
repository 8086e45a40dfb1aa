"""Exception hierarchy.

Each class carries the CLI exit code it maps to.
"""


class OctavicsError(Exception):
    exit_code = 1


class InputError(OctavicsError, ValueError):
    exit_code = 1


class UnsupportedModelError(InputError):
    pass


class MathDomainError(OctavicsError, ArithmeticError):
    exit_code = 2


class SingularCurveError(MathDomainError):
    pass


class DegenerateTupleError(MathDomainError):
    pass


class ConditionError(MathDomainError):
    """Numeric root finding hit (near-)repeated roots or a degree drop."""


class NoSolutionError(MathDomainError):
    def __init__(self, msg, row=None):
        super().__init__(msg)
        self.row = row


class ValidationError(OctavicsError):
    exit_code = 3


class SamplingDegeneracyError(ValidationError):
    pass


class ConventionMismatchError(ValidationError):
    pass


class RepresentationFailureError(ValidationError):
    pass


class NotInitializedError(OctavicsError):
    exit_code = 3


class HashMismatchError(ValidationError):
    pass
