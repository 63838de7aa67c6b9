"""Exception hierarchy shared by every pcnsolve module."""


class PcnError(Exception):
    """Base class for all library errors."""


class GraphError(PcnError):
    """Malformed graph input (self-loop, duplicate edge, bad vertex id)."""


class DisconnectedError(GraphError):
    """The graph is not connected; distances would be undefined."""


class EmptyLayerSetError(PcnError):
    """A layered construction was requested with no layers."""


class BudgetExceededError(PcnError):
    """A Hamming graph would exceed the configured vertex budget."""


class QTooSmallError(PcnError):
    """The construction needs an alphabet of at least three symbols."""


class NoClosedFormError(PcnError):
    """No closed form is known for the requested (q, m)."""


class InvalidInitialSetError(PcnError):
    """A warm start handed to the solver is not a stable set."""


class StarMembersPresentError(PcnError):
    """A layered stable set still holds star vertices where none are allowed."""


class InvalidUpperBoundError(PcnError):
    """A supplied witness coloring does not certify the claimed bound."""


class TooLargeError(PcnError):
    """Input exceeds the hard cap of an exhaustive routine."""


class InvalidCoverError(PcnError):
    """A clique cover is not a valid edge cover by cliques."""


class BudgetExhaustedError(PcnError):
    """A solve stopped on its budget before proving optimality."""


class FormatError(PcnError):
    """A file could not be parsed; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
