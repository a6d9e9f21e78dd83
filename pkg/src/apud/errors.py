"""Exception types shared across the package."""


class RejectedInput(ValueError):
    """An argument violates an operation's precondition."""


class ParseError(RejectedInput):
    """Malformed text input. ``line`` is 1-based, or None when not tied to a line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
