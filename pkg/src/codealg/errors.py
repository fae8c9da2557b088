"""Exception hierarchy shared by all modules."""


class CodeAlgebraError(Exception):
    """Base class for every error raised by this package."""


class FieldTooSmall(CodeAlgebraError):
    """A required square root does not exist in the configured field."""


class DegenerateRoots(CodeAlgebraError):
    """x^2 + 2 xi x - 1 has a repeated root (xi^2 = -1)."""


class DivisionByZero(CodeAlgebraError, ZeroDivisionError):
    pass


class LengthMismatch(CodeAlgebraError, ValueError):
    pass


class NotACodeword(CodeAlgebraError, ValueError):
    pass


class SearchBoundExceeded(CodeAlgebraError):
    pass


class DegenerateParams(CodeAlgebraError):
    """Some structure parameter consulted by the multiplication is zero."""


class MissingParam(CodeAlgebraError):
    pass


class BasisMismatch(CodeAlgebraError):
    pass


class HypothesisViolated(CodeAlgebraError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InternalInconsistency(CodeAlgebraError):
    pass


class DecompositionFailure(CodeAlgebraError):
    pass


class EvaluationMapsDiffer(CodeAlgebraError):
    def __init__(self, message, c_values=None):
        super().__init__(message)
        self.c_values = c_values or {}


class NotAnAutomorphism(CodeAlgebraError):
    pass


class ClosureBudgetExceeded(CodeAlgebraError):
    pass


class PairingFailed(CodeAlgebraError):
    pass


class ProjectivityRequired(CodeAlgebraError):
    pass


class InconsistentStructure(CodeAlgebraError):
    pass


class ParseError(CodeAlgebraError, ValueError):
    def __init__(self, message, path=None, line=None):
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.path = path
        self.line = line
