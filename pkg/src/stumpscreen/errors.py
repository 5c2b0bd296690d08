"""Exception types shared across the package."""


class StumpScreenError(ValueError):
    """Base class for all screening errors."""


class InvalidSplitError(StumpScreenError):
    """A split point leaves one daughter node empty."""


class ZeroVarianceError(StumpScreenError):
    """The response is constant where nonzero variance is required."""


class NoElbowError(StumpScreenError):
    """All importance scores are identical; two-cluster separation is undefined."""


class DataFormatError(StumpScreenError):
    """Input file violates the expected CSV layout."""


class ConfigError(StumpScreenError):
    """An experiment or CLI configuration field is invalid."""
