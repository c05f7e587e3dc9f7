"""Dense symmetric-positive-definite kernels.

Everything downstream (regions, sampling, experiments) runs through the
covariance matrix: its Cholesky factor, inverse, determinant and trace.
Matrices are small dense numpy arrays (the worked example is 2x2), so the
factorization is a plain pivot loop with an explicit, scale-invariant
positive-definiteness test instead of an opaque LAPACK error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .errors import DimensionMismatch, NotPositiveDefinite, NotSymmetric

# Relative asymmetry tolerated before a matrix is rejected outright.
SYMMETRY_RTOL = 1e-9
# Cholesky pivots are compared against PIVOT_RTOL * max(diagonal).
PIVOT_RTOL = 1e-12


def _as_square(m) -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if a.size == 0:
        raise DimensionMismatch("matrix must be at least 1x1")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def as_vector(x, dim: int | None = None) -> np.ndarray:
    """Validate a 1-D finite vector, optionally of a required dimension."""
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise DimensionMismatch(f"expected a 1-D vector, got shape {v.shape}")
    if dim is not None and v.shape[0] != dim:
        raise DimensionMismatch(f"expected dimension {dim}, got {v.shape[0]}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return v


def symmetrize(m, rtol: float = SYMMETRY_RTOL) -> np.ndarray:
    """Return (M + M^T)/2, rejecting matrices that are meaningfully asymmetric.

    Asymmetry up to ``rtol`` relative to the largest entry is treated as
    round-trip noise (e.g. from text formats) and averaged away; anything
    larger raises :class:`NotSymmetric`.
    """
    a = _as_square(m)
    scale = float(np.max(np.abs(a)))
    gap = float(np.max(np.abs(a - a.T)))
    if gap > rtol * max(scale, 1e-300):
        raise NotSymmetric(
            f"matrix asymmetry {gap:.3e} exceeds {rtol:.1e} relative to scale {scale:.3e}"
        )
    return 0.5 * (a + a.T)


def cholesky(m, tol: float | None = None) -> np.ndarray:
    """Lower-triangular L with L L^T = m for symmetric positive-definite m.

    Parameters
    ----------
    m : array_like, shape (n, n)
        Symmetric matrix (within ``SYMMETRY_RTOL``).
    tol : float, optional
        Pivot threshold in squared-data units. A factorization pivot
        (diagonal value after elimination, before the square root) at or
        below ``tol`` raises :class:`NotPositiveDefinite`. Defaults to
        ``PIVOT_RTOL * max(diagonal)``, which makes the singularity test
        invariant under rescaling of the matrix.
    """
    a = symmetrize(m)
    n = a.shape[0]
    if tol is None:
        tol = PIVOT_RTOL * max(float(np.max(np.diag(a))), 0.0)
    lower = np.zeros_like(a)
    for i in range(n):
        for j in range(i + 1):
            s = a[i, j] - lower[i, :j] @ lower[j, :j]
            if i == j:
                if s <= tol:
                    raise NotPositiveDefinite(
                        f"pivot {s:.6e} at row {i} is <= tolerance {tol:.6e}"
                    )
                lower[i, i] = np.sqrt(s)
            else:
                lower[i, j] = s / lower[j, j]
    return lower


@dataclass(frozen=True, eq=False)
class Covariance:
    """A validated SPD covariance matrix with its derived quantities.

    Construction (via :meth:`from_matrix`) symmetrizes the input, runs the
    Cholesky factorization as the positive-definiteness test, and caches the
    factor, determinant and trace; all downstream operations reuse them.
    Instances are immutable.
    """

    entries: np.ndarray
    chol: np.ndarray
    det: float
    trace: float

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def from_matrix(cls, m) -> "Covariance":
        a = symmetrize(m)
        lower = cholesky(a)
        a.setflags(write=False)
        lower.setflags(write=False)
        piv = np.diag(lower)
        return cls(
            entries=a,
            chol=lower,
            det=float(np.prod(piv) ** 2),
            trace=float(np.trace(a)),
        )


def invert_spd(c: Covariance) -> np.ndarray:
    """Precision matrix Sigma^-1, computed from the cached Cholesky factor.

    With L L^T = Sigma, the inverse is L^-T L^-1; the result is symmetrized
    exactly so the precision can be reused as a quadratic-form kernel.
    """
    eye = np.eye(c.dim)
    linv = solve_triangular(c.chol, eye, lower=True)
    p = linv.T @ linv
    return 0.5 * (p + p.T)


def det_spd(c: Covariance) -> float:
    """Determinant of the covariance, cached as (prod L_ii)^2."""
    return c.det


def trace(c: Covariance) -> float:
    """Trace of the covariance, i.e. the total variance."""
    return c.trace


def quad_form(d, p: np.ndarray) -> float | np.ndarray:
    """Quadratic form d^T p d for an SPD kernel p.

    ``d`` may be a single vector of shape (n,) or a batch of shape (..., n);
    the result is a float or an array of the leading shape. Tiny negative
    values from round-off are clamped to zero (the form is nonnegative for
    SPD ``p``).
    """
    kernel = _as_square(p)
    dv = np.asarray(d, dtype=float)
    if dv.shape[-1:] != (kernel.shape[0],):
        raise DimensionMismatch(
            f"vector dimension {dv.shape[-1:]} does not match kernel {kernel.shape}"
        )
    q = np.einsum("...i,ij,...j->...", dv, kernel, dv)
    q = np.maximum(q, 0.0)
    return float(q) if q.ndim == 0 else q
