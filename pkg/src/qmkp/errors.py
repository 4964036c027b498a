"""Exception hierarchy shared by every qmkp module."""


class QMKPError(Exception):
    """Base class for all errors raised by qmkp."""


class StructuralError(QMKPError, ValueError):
    """An assignment or index does not match the shape of its instance."""


class ContractError(QMKPError, ValueError):
    """A precondition of an incremental operation was violated."""


class ParameterError(QMKPError, ValueError):
    """A solver or generator parameter lies outside its legal range."""


class InstanceTooLargeError(QMKPError, RuntimeError):
    """The exact solver would need more nodes than its budget allows."""


class FormatError(QMKPError, ValueError):
    """A file could not be parsed.

    ``line`` holds the 1-based line number of the offending line, when known.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConstraintViolationError(FormatError):
    """An assignment matrix places an item in more than one knapsack."""
