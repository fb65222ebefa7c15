"""Exception hierarchy shared by every module."""


class ThetacodeError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(ThetacodeError):
    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class WordTooShort(ThetacodeError):
    pass


class LetterNotInAlphabet(ThetacodeError):
    pass


class IdOutOfRange(ThetacodeError):
    pass


class SignatureMismatch(ThetacodeError):
    pass


class UnknownVariant(ThetacodeError):
    pass


class BadParameters(ThetacodeError):
    pass


class ArityMismatch(ThetacodeError):
    pass


class DomainMismatch(ThetacodeError):
    pass


class NotWnu(ThetacodeError):
    def __init__(self, x: int, y: int, message: str):
        self.witness = (x, y)
        super().__init__(message)


class SharedPartMismatch(ThetacodeError):
    pass


class NotSeparated(ThetacodeError):
    pass
