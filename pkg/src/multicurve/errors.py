"""Exception hierarchy shared across the library."""


class MultiCurveError(Exception):
    """Base class for all library errors."""


class DateOrderError(MultiCurveError):
    """Dates passed in the wrong temporal order."""


class ScheduleError(MultiCurveError):
    """Schedule cannot be built from the given anchors and frequency."""


class QuoteParseError(MultiCurveError):
    """A market-data file row could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateQuoteError(MultiCurveError):
    """Two quotes map to the same instrument key."""


class CalibrationError(MultiCurveError):
    """Bootstrap could not solve for a pillar."""

    def __init__(self, message: str, instrument: str | None = None):
        self.instrument = instrument
        if instrument is not None:
            message = f"{instrument}: {message}"
        super().__init__(message)


class ConfigurationError(MultiCurveError):
    """Mismatched curve roles, missing curves, or bad run configuration."""


class AlignmentError(MultiCurveError):
    """Two dated series do not share the required date axis."""


class InsufficientPanelError(MultiCurveError):
    """Too few panel quotes survive trimming."""


class InversionError(MultiCurveError):
    """Target premium is outside the attainable range."""
