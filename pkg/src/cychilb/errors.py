"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid (s, n, r) or out-of-range argument."""


class DimensionError(ValueError):
    """Matrix or vector dimensions do not fit the operation."""


class ConfigurationError(ValueError):
    """A tunable (search cap, bound) is too small to be meaningful."""


class ConventionError(RuntimeError):
    """An identity that the fixed sign/indexing conventions guarantee failed.

    Raised only on internal inconsistency; never expected on valid input.
    """


class MatchFailure(RuntimeError):
    """No (or no unique) simultaneous valuation minimizer for a cone."""

    def __init__(self, message, cone=None, weight_class=None):
        super().__init__(message)
        self.cone = cone
        self.weight_class = weight_class


class InvalidFixedPointError(ValueError):
    """An ideal that is not a torus-fixed point of the expected shape."""
