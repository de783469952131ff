"""Exception hierarchy.

The CLI maps these onto exit codes, so new error kinds should subclass one
of the classes below rather than raising bare ``ValueError``.
"""


class HiddenTiesError(Exception):
    """Base class for every error raised by the package."""


class GraphError(HiddenTiesError, ValueError):
    """A graph violates a structural rule or an operation's precondition."""


class DisconnectedGraphError(GraphError):
    """The operation is only defined on connected graphs."""


class ParseError(HiddenTiesError, ValueError):
    """Input bytes do not conform to the expected format.

    ``location`` is a 1-based line number for delimited text or a
    JSON-pointer-style path for JSON documents.
    """

    def __init__(self, message: str, location: int | str | None = None):
        self.message = message
        self.location = location
        if location is None:
            text = message
        elif isinstance(location, int):
            text = f"line {location}: {message}"
        else:
            text = f"{location}: {message}"
        super().__init__(text)


class InvariantError(HiddenTiesError, AssertionError):
    """An internal consistency check failed; indicates a bug, not bad input."""
