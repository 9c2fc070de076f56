"""Exception hierarchy shared by every module."""


class NovError(Exception):
    """Base class for all errors raised by nnov."""


class UsageError(NovError, ValueError):
    """Bad arguments: length mismatches, unknown modes, equal words passed to ``compare``."""


class DomainError(NovError, ValueError):
    """An input outside the operation's domain, typically a word of weight other than -1."""


class InvariantViolation(NovError, RuntimeError):
    """An internal invariant failed. This signals a bug or a counterexample, never bad input."""


class VerificationFailure(InvariantViolation):
    """A checked mathematical claim failed (e.g. a singular change-of-basis matrix)."""


class ParseError(NovError, ValueError):
    """Malformed text input.

    ``position`` is a 0-based offset into the input string; ``expected`` and
    ``found`` describe the offending token.
    """

    def __init__(self, text: str, position: int, expected: str, found: str | None = None):
        self.text = text
        self.position = position
        self.expected = expected
        if found is None:
            found = repr(text[position]) if position < len(text) else "end of input"
        self.found = found
        super().__init__(f"at position {position}: expected {expected}, found {found}")
