"""Exception types shared across the package."""


class InputError(ValueError):
    """Invalid arguments or malformed input (CLI exit code 2)."""


class RankMismatch(InputError):
    pass


class UnrealizableError(InputError):
    """The target function is constant or not monotone."""


class FormulaSyntaxError(InputError):
    def __init__(self, message, position):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class PaddingError(InputError):
    """No legal pad generator exists for an operand."""


class CompileError(RuntimeError):
    """A construction produced a word that failed verification."""


class SearchExhausted(RuntimeError):
    """The randomized search ran out of retries without a certified word."""

    def __init__(self, message, attempts):
        super().__init__(message)
        self.attempts = attempts
