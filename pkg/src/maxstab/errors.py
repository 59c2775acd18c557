"""Exception vocabulary shared across the library.

The CLI maps ConfigError to exit code 2 and DegeneracyError to exit code 3;
everything else is a plain bug.
"""


class DomainError(ValueError):
    """Argument outside the mathematical domain of a function."""


class ParameterError(ValueError):
    """Model parameters violate their invariants (e.g. non positive definite)."""


class DataError(ValueError):
    """Observed data violate a precondition (e.g. non-positive margins)."""


class ConfigError(ValueError):
    """Run configuration is inconsistent or incomplete."""


class DegeneracyError(RuntimeError):
    """A numerical procedure produced a degenerate result (singular matrix, ...)."""
