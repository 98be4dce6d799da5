"""Exception types shared across the package."""


class CrossmapError(ValueError):
    """Base class for domain errors raised by this package."""


class ParameterError(CrossmapError):
    """An argument violates a documented precondition."""


class SeriesTooShortError(CrossmapError):
    """A series cannot support the requested embedding or horizon."""


class ZeroVarianceError(CrossmapError):
    """Correlation skill is undefined because one side is constant."""


class CsvFormatError(CrossmapError):
    """An input file violates the expected CSV layout."""
