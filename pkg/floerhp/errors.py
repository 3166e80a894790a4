from floerhp.constants import EXIT_INCONSISTENCY, EXIT_KNOT_DATA, EXIT_PRECONDITION, EXIT_FAILURE


class FloerHPError(Exception):
    """
    Base class of every error raised by the package. Subclasses fix the exit code used by the command line.
    """
    exit_code: int = EXIT_FAILURE

    def __init__(self, message: str = "", reason: str = None, field: str = None):
        super().__init__(message)
        self.message = message
        self.reason = reason or type(self).__name__
        self.field = field

    def to_dict(self) -> dict:
        """
        Structured form of the error, as printed on stderr by the command line.
        """
        d = {"error": type(self).__name__, "reason": self.reason}
        if self.field is not None:
            d["field"] = self.field
        d["message"] = self.message
        return d


class PreconditionError(FloerHPError):
    exit_code = EXIT_PRECONDITION


class NonAdmissible(PreconditionError):
    BOUNDARY_SLOPE = "BoundarySlope"
    IRREGULAR_SLOPE = "IrregularSlope"
    ALEXANDER_ROOT = "AlexanderRoot"

    def __init__(self, message: str = "", reason: str = None, field: str = None):
        if reason not in (self.BOUNDARY_SLOPE, self.IRREGULAR_SLOPE, self.ALEXANDER_ROOT):
            raise ValueError(f"Unknown non-admissibility reason {reason}")
        super().__init__(message, reason=reason, field=field)


class NotCoprime(PreconditionError):
    pass


class ZeroSurgeryCoefficient(PreconditionError):
    pass


class PositiveDimensional(PreconditionError):
    pass


class NotSmallKnot(PreconditionError):
    pass


class NotTwoBridge(PreconditionError):
    pass


class UnsupportedDegree(PreconditionError):
    pass


class CoefficientMismatch(PreconditionError):
    pass


class UnsupportedSummand(PreconditionError):
    pass


class UnknownKnot(PreconditionError):
    pass


class SlopeFormatError(PreconditionError):
    pass


class KnotDataError(FloerHPError):
    """
    A knot database (or self-test configuration) violates its schema. `field` names the offending entry.
    """
    exit_code = EXIT_KNOT_DATA


class InconsistencyError(FloerHPError):
    exit_code = EXIT_INCONSISTENCY


class NonIntegerResult(InconsistencyError):
    pass


class UnreachableStratum(InconsistencyError):
    pass
