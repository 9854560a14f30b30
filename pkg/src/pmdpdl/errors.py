"""Exception types shared across the package."""


class PmdPdlError(Exception):
    """Base class for the domain errors raised by this package."""


class NearZeroTransmissionError(PmdPdlError):
    """No optical power reaches the detector, so arrival-time statistics are
    undefined (typical cause: a polarizer crossed with the incoming light)."""


class DegeneratePostSelectionError(PmdPdlError):
    """Pre- and post-selection assign zero probability to both outcomes."""


class OrthogonalPostSelectionError(PmdPdlError):
    """The post-selected state is numerically orthogonal to the input, so the
    conditioned value diverges and no digits of it are trustworthy."""


class ZeroVectorError(PmdPdlError, ValueError):
    """A zero-norm vector where a direction or state is required."""


class TooManyElementsError(PmdPdlError, ValueError):
    """Exhaustive ordering search refused: element count above the cap."""


class ParseError(PmdPdlError, ValueError):
    """Network file rejected. Carries the 1-based line number and the
    offending token, and always includes both in the message."""

    def __init__(self, line_no: int, token: str, message: str):
        self.line_no = line_no
        self.token = token
        self.message = message
        super().__init__(f"line {line_no}: {message}: {token!r}")
