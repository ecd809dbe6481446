"""Exception hierarchy shared by all eqtrans modules."""


class EqTransError(Exception):
    """Base class for every error raised by this package."""


# -- graph and assignment errors ---------------------------------------------

class GraphError(EqTransError, ValueError):
    pass


class DuplicateEdge(GraphError):
    pass


# The rel file format calls the same condition a duplicate pair.
DuplicatePair = DuplicateEdge


class DuplicateVariable(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class PartialAssignment(GraphError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class NotASuperset(GraphError):
    pass


class InputViolatesTransitivity(GraphError):
    pass


class VarBaseTooLow(GraphError):
    pass


class EdgeMissing(GraphError):
    pass


# -- file format errors ------------------------------------------------------

class FormatError(EqTransError, ValueError):
    """A reader rejected its input.  ``line`` is 1-based, or None."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class MalformedHeader(FormatError):
    pass


class MalformedLine(FormatError):
    pass


class LiteralOutOfRange(FormatError):
    pass


class UnterminatedClause(FormatError):
    pass


class ClauseCountMismatch(UserWarning):
    """Header clause count disagrees with the body.  Tolerated on read."""


# -- resource limits ---------------------------------------------------------

class LimitError(EqTransError, RuntimeError):
    """A configurable budget ran out.  ``count`` is the progress made so far."""

    def __init__(self, message, count=0):
        super().__init__(message)
        self.count = count


class LimitExceeded(LimitError):
    pass


class ResourceLimit(LimitError):
    pass


class RoundLimitExceeded(LimitError):
    pass


class NodeLimitExceeded(LimitError):
    pass
