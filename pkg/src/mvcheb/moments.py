"""Mean/covariance estimation from sample sets, plus the worked-example matrix.

A sample set is a plain float array of shape (N, n): one row per draw. The
CSV interchange format is a header row ``x1,...,xn`` followed by one
comma-separated sample per line.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from os import PathLike

import numpy as np

from .errors import (
    CsvFormatError,
    DimensionMismatch,
    EmptySampleSet,
    InsufficientSamples,
    NonPositiveParameter,
)
from .linalg import Covariance


def as_samples(rows) -> np.ndarray:
    """Validate a sample set: 2-D, at least one row, all entries finite."""
    a = np.asarray(rows, dtype=float)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    if a.ndim != 2:
        raise DimensionMismatch(f"samples must be 2-D, got shape {a.shape}")
    if a.shape[0] == 0:
        raise EmptySampleSet("sample set has no rows")
    if not np.all(np.isfinite(a)):
        raise ValueError("sample entries must be finite")
    return a


def sample_mean(samples) -> np.ndarray:
    """Componentwise arithmetic mean of the rows."""
    return as_samples(samples).mean(axis=0)


def sample_covariance(samples, ddof: int = 1, ridge: float = 0.0) -> Covariance:
    """Sample covariance matrix as a validated :class:`Covariance`.

    Parameters
    ----------
    samples : array_like, shape (N, n)
    ddof : {0, 1}
        Divisor is N - ddof; ddof=1 (default) is the unbiased estimator.
    ridge : float
        Optional nonnegative multiple of the identity added before
        validation, as an escape hatch for degenerate data. Default 0
        keeps the estimator exact; degeneracy then surfaces as
        :class:`NotPositiveDefinite`.
    """
    a = as_samples(samples)
    if ddof not in (0, 1):
        raise ValueError("ddof must be 0 or 1")
    if ridge < 0.0:
        raise NonPositiveParameter("ridge must be nonnegative")
    n_rows = a.shape[0]
    if n_rows - ddof < 1:
        raise InsufficientSamples(
            f"need at least {ddof + 1} rows for ddof={ddof}, got {n_rows}"
        )
    centered = a - a.mean(axis=0)
    cov = centered.T @ centered / (n_rows - ddof)
    if ridge > 0.0:
        cov = cov + ridge * np.eye(cov.shape[0])
    return Covariance.from_matrix(cov)


@dataclass(frozen=True, eq=False)
class MomentEstimate:
    """Estimated mean vector and covariance matrix of a sample set."""

    mean: np.ndarray
    cov: Covariance
    ddof: int


def estimate_moments(samples, ddof: int = 1, ridge: float = 0.0) -> MomentEstimate:
    a = as_samples(samples)
    return MomentEstimate(
        mean=sample_mean(a), cov=sample_covariance(a, ddof=ddof, ridge=ridge), ddof=ddof
    )


def example_covariance(sigma: float, k: float) -> Covariance:
    """The 2x2 covariance of the worked example, [[s^2, s^2], [s^2, (k+1) s^2]].

    This is the covariance of (y, y+z) for independent zero-mean Gaussians
    y, z with variances sigma^2 and k*sigma^2. Its trace is (k+2) sigma^2 and
    its determinant k sigma^4.
    """
    if sigma <= 0.0:
        raise NonPositiveParameter(f"sigma must be positive, got {sigma}")
    if k <= 0.0:
        raise NonPositiveParameter(f"k must be positive, got {k}")
    s2 = float(sigma) ** 2
    return Covariance.from_matrix([[s2, s2], [s2, (k + 1.0) * s2]])


def _expected_header(dim: int) -> list[str]:
    return [f"x{i + 1}" for i in range(dim)]


def read_samples_csv(source) -> np.ndarray:
    """Read a sample set from a CSV path or text stream.

    The header must be ``x1,...,xn``; every data row must have exactly n
    numeric fields. Ragged or non-numeric rows raise :class:`CsvFormatError`
    naming the offending line; a header with no data rows raises
    :class:`EmptySampleSet`.
    """
    if isinstance(source, (str, PathLike)):
        with open(source, newline="") as fh:
            return read_samples_csv(fh)
    reader = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        raise CsvFormatError("empty file: expected header row x1,...,xn") from None
    header = [h.strip() for h in header]
    if header != _expected_header(len(header)) or not header:
        raise CsvFormatError(f"bad header {header!r}: expected x1,...,xn")
    dim = len(header)
    rows = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != dim:
            raise CsvFormatError(
                f"line {lineno}: expected {dim} fields, got {len(row)}"
            )
        try:
            rows.append([float(f) for f in row])
        except ValueError:
            raise CsvFormatError(f"line {lineno}: non-numeric field in {row!r}") from None
    if not rows:
        raise EmptySampleSet("no data rows after the header")
    return as_samples(rows)


def write_samples_csv(samples, target) -> None:
    """Write a sample set in the CSV interchange format (lossless floats)."""
    a = as_samples(samples)
    if isinstance(target, (str, PathLike)):
        with open(target, "w", newline="") as fh:
            write_samples_csv(a, fh)
        return
    writer = csv.writer(target, lineterminator="\n")
    writer.writerow(_expected_header(a.shape[1]))
    for row in a:
        writer.writerow([repr(float(v)) for v in row])


def samples_to_csv_text(samples) -> str:
    buf = io.StringIO()
    write_samples_csv(samples, buf)
    return buf.getvalue()
