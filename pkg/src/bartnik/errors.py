"""Exception types shared across the package."""


class BartnikError(Exception):
    """Base class for all package-specific errors."""


class ProfileDomainError(BartnikError, ValueError):
    """Evaluation point lies outside a profile's grid."""


class SchemaError(BartnikError, ValueError):
    """Input file does not match the expected JSON schema."""


class GluingError(BartnikError, ValueError):
    """Corner data is inconsistent (e.g. mismatched corner radii)."""


class NotAllowableError(BartnikError, ValueError):
    """Region violates the allowable-region hypotheses (R >= 0, H > 0)."""


class WarpError(BartnikError, ValueError):
    """Warp factor is invalid (nonpositive, or grid outside the collar)."""


class ConstructionFailedError(BartnikError, RuntimeError):
    """A verified construction could not be completed at any collar size."""


class InsufficientDataError(BartnikError, ValueError):
    """Too few samples for a requested estimate (e.g. short tail window)."""


class AmplitudeError(BartnikError, ValueError):
    """Conformal source amplitude too large (solution loses positivity)."""


class CollarError(BartnikError, ValueError):
    """Requested collar depth exceeds the region where data is defined."""


class PreconditionError(BartnikError, ValueError):
    """A documented precondition of an operation is violated."""


class ConfigError(BartnikError, ValueError):
    """A configuration object violates its contract (e.g. cutoff shapes)."""


class ParameterSearchError(BartnikError, RuntimeError):
    """An iterative parameter search exhausted its budget.

    Carries a ``diagnostics`` dict describing the failed attempts.
    """

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
