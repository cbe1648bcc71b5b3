"""Exception hierarchy shared by every module of the package."""


class BranchError(Exception):
    """Base class. ``code`` is a stable machine-readable name."""

    code = "BranchError"

    def __init__(self, message="", **details):
        super().__init__(message or self.code)
        self.details = details

    def as_dict(self):
        return {"error": self.code, "message": str(self), **self.details}


class ValidationError(BranchError, ValueError):
    """A pair class violates one of its defining invariants."""

    code = "ValidationError"


class NonIncreasingExponents(ValidationError):
    code = "NonIncreasingExponents"


class GcdChainStall(ValidationError):
    code = "GcdChainStall"


class GcdNotOne(ValidationError):
    code = "GcdNotOne"


class BadBeta0(ValidationError):
    code = "BadBeta0"


class DeltaYZeroBeta0(ValidationError):
    code = "DeltaYZeroBeta0"


class MultiplicityTooSmall(ValidationError):
    code = "MultiplicityTooSmall"


class BadFlag(ValidationError):
    code = "BadFlag"


class ParseError(ValidationError):
    """Malformed class literal; carries 1-based ``line`` and ``column``."""

    code = "ParseError"

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})",
                         line=line, column=column)
        self.line = line
        self.column = column


class NotAMember(BranchError, ValueError):
    code = "NotAMember"


class UnsuitablePresentation(BranchError, ValueError):
    code = "UnsuitablePresentation"


class NonTermination(BranchError, RuntimeError):
    code = "NonTermination"


class PostconditionViolation(BranchError, RuntimeError):
    code = "PostconditionViolation"


class InfiniteDifference(BranchError, ValueError):
    code = "InfiniteDifference"


class NotASlidingDivisor(BranchError, ValueError):
    code = "NotASlidingDivisor"


class IterationCap(BranchError, RuntimeError):
    code = "IterationCap"


class CrossCheckFailure(BranchError, AssertionError):
    """Two independent computations that must agree did not."""

    code = "CrossCheckFailure"


class InclusionViolated(CrossCheckFailure):
    code = "InclusionViolated"


class SigmaMismatch(CrossCheckFailure):
    code = "SigmaMismatch"


class ZeroToPrecision(BranchError, ArithmeticError):
    code = "ZeroToPrecision"


class PrecisionExhausted(BranchError, ArithmeticError):
    code = "PrecisionExhausted"
