class LieCohError(Exception):
    """Base class for every error raised by liecoh."""


class ParseError(LieCohError, ValueError):
    def __init__(self, message, token=None, position=None):
        super().__init__(message)
        self.token = token
        self.position = position


class DimensionMismatch(LieCohError, ValueError):
    pass


class ValidationError(LieCohError):
    """An axiom check failed; ``witness`` carries the offending indices."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PreconditionError(LieCohError, ValueError):
    pass


class CapExceeded(LieCohError):
    def __init__(self, message, cap=None, value=None):
        super().__init__(message)
        self.cap = cap
        self.value = value
