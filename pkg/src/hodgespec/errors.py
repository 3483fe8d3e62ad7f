"""Exception hierarchy shared by all modules."""


class HodgeSpecError(Exception):
    """Base class for every error raised by this package."""


class MalformedFaceError(HodgeSpecError, ValueError):
    pass


class MalformedEdgeError(HodgeSpecError, ValueError):
    pass


class OutOfRangeError(HodgeSpecError, ValueError):
    pass


class MissingCellError(HodgeSpecError, KeyError):
    pass


class DimensionError(HodgeSpecError, ValueError):
    pass


class PreconditionError(HodgeSpecError, ValueError):
    """A hypothesis of the requested check is not met by the input."""


class NotApplicableError(HodgeSpecError, ValueError):
    pass


class InvalidParamsError(HodgeSpecError, ValueError):
    pass


class ResourceError(HodgeSpecError, RuntimeError):
    """Input exceeds the desk-scale caps (dense eigensolver, exhaustive search)."""


class NumericError(HodgeSpecError, ArithmeticError):
    def __init__(self, message, matrix=None):
        super().__init__(message)
        self.matrix = matrix


class ParseError(HodgeSpecError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class FaceParseError(ParseError, MalformedFaceError):
    """A face line of a complex file repeats a vertex or is otherwise malformed."""


class VertexParseError(ParseError, OutOfRangeError):
    """A face line of a complex file names a vertex id >= n."""
