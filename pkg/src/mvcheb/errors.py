"""Exception types shared across the package.

Everything derives from ``ValueError`` so callers that do not care about
the fine-grained categories can catch the usual builtin.
"""


class NotSymmetric(ValueError):
    """Matrix is not symmetric within the allowed relative tolerance."""


class NotPositiveDefinite(ValueError):
    """Cholesky factorization hit a non-positive pivot."""


class DimensionMismatch(ValueError):
    """Operands have incompatible dimensions."""


class EmptySampleSet(ValueError):
    """A sample set with zero rows was supplied."""


class InsufficientSamples(ValueError):
    """Too few rows for the requested estimator."""


class CsvFormatError(ValueError):
    """Sample CSV is malformed (bad header, ragged or non-numeric row)."""


class NonPositiveParameter(ValueError):
    """A parameter that must be strictly positive was not."""


class NonPositiveEpsilon(ValueError):
    """Tail level epsilon must be strictly positive."""


class NonPositiveVariance(ValueError):
    """Total variance must be strictly positive."""


class DeltaOutOfRange(ValueError):
    """Coverage parameter delta must lie strictly inside (0, 1)."""


class UnsupportedDimension(ValueError):
    """Operation is only defined for a specific dimension."""


class InvalidSpec(ValueError):
    """Sampler specification is incomplete or inconsistent."""


class EmptyGrid(ValueError):
    """An epsilon grid must contain at least one value."""
