"""Exception types shared across the package."""


class LexsimpError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(LexsimpError):
    """A dataset, lexicon, or prediction file could not be parsed.

    Carries the file path and 1-based line number when known so batch
    tooling can point at the offending line.
    """

    def __init__(self, message: str, path=None, line_no: int | None = None):
        self.path = path
        self.line_no = line_no
        prefix = ""
        if path is not None:
            prefix = f"{path}:"
            if line_no is not None:
                prefix += f"{line_no}:"
            prefix += " "
        super().__init__(prefix + message)


class ExtractionError(LexsimpError):
    """A generated sequence does not contain a well-formed marked span."""


class TransportError(LexsimpError):
    """The remote generation endpoint could not be reached."""


class ProtocolError(LexsimpError):
    """The remote generation endpoint answered with an unusable response."""

    def __init__(self, message: str, status_code: int | None = None):
        self.status_code = status_code
        super().__init__(message)
