"""Exception types shared across the package."""


class DistSpecError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(DistSpecError, ValueError):
    """A family or search parameter violates its precondition."""


class InvalidInputError(DistSpecError, ValueError):
    """Input data (matrix, polynomial) is outside an operation's domain."""


class DisconnectedGraphError(DistSpecError, ValueError):
    """Distances are undefined because the graph is disconnected."""


class NotEquitableError(DistSpecError, ValueError):
    """A vertex partition does not give constant block row sums."""

    def __init__(self, block, rows, sums):
        self.block = block
        self.rows = rows
        self.sums = sums
        i, j = block
        super().__init__(
            f"partition is not equitable: block ({i}, {j}) has row sums "
            f"{sums} on rows {rows}"
        )


class Graph6ParseError(DistSpecError, ValueError):
    """Malformed graph6 input; ``offset`` is the byte position of the fault."""

    def __init__(self, message, offset):
        self.offset = offset
        super().__init__(f"{message} (at byte {offset})")
