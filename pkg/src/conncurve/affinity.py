"""Affinity matrices: validation, thresholding, and constructors.

An affinity on a finite set of n points is a symmetric n x n matrix of
strictly positive extended reals whose diagonal is +infinity. High
affinity means "close"; +infinity off the diagonal means the two points
are indistinguishable at every scale. Finite entries are stored as
float64 and infinity as IEEE ``inf`` (never a large sentinel), so
threshold comparisons against the infinity pattern are exact.

Thresholding at ``lam`` promotes every entry strictly above ``lam`` to
infinity and keeps the rest, yielding a one-parameter family of coarser
and coarser affinities as ``lam`` decreases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    AllInfiniteError,
    AsymmetricEntryError,
    FiniteDiagonalError,
    NegativeLengthError,
    NonPositiveEntryError,
    NonPositiveThresholdError,
    NotSquareError,
)

__all__ = [
    "AffinityMatrix",
    "PointSet",
    "validate",
    "threshold",
    "metric_affinity",
    "inverse_distance_affinity",
    "boundary_affinity",
    "normalize",
    "DEFAULT_ZERO_EPSILON",
]

# Floor substituted for "no connection" entries by builders that admit
# zeros; below every threshold of practical interest.
DEFAULT_ZERO_EPSILON = 1e-12


class AffinityMatrix:
    """A validated affinity: symmetric, positive, infinite diagonal.

    Instances are immutable; the backing array is marked read-only.
    Construct via :func:`validate` or one of the builders rather than
    calling the constructor with unchecked data.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: np.ndarray):
        arr = np.array(entries, dtype=np.float64, copy=True)
        _check_invariants(arr)
        arr.flags.writeable = False
        self._entries = arr

    @property
    def entries(self) -> np.ndarray:
        """Read-only (n, n) float64 array; ``inf`` marks infinite affinity."""
        return self._entries

    @property
    def n(self) -> int:
        return self._entries.shape[0]

    def max_finite(self) -> float | None:
        """Largest finite entry, or None if every off-diagonal entry is inf."""
        finite = self._entries[np.isfinite(self._entries)]
        return float(finite.max()) if finite.size else None

    def __repr__(self) -> str:
        return f"AffinityMatrix(n={self.n})"


@dataclass(frozen=True)
class PointSet:
    """A nonempty list of points in 1- or 2-dimensional Euclidean space."""

    dim: int
    points: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ValueError(f"dim must be 1 or 2, got {self.dim}")
        if not self.points:
            raise ValueError("point set must be nonempty")
        for p in self.points:
            if len(p) != self.dim:
                raise ValueError(f"point {p!r} does not have {self.dim} coordinates")
            if not all(math.isfinite(c) for c in p):
                raise ValueError(f"point {p!r} has a non-finite coordinate")

    @classmethod
    def from_1d(cls, values) -> "PointSet":
        return cls(1, tuple((float(v),) for v in values))

    @classmethod
    def from_2d(cls, pairs) -> "PointSet":
        return cls(2, tuple((float(x), float(y)) for x, y in pairs))

    def as_array(self) -> np.ndarray:
        return np.array(self.points, dtype=np.float64)

    def __len__(self) -> int:
        return len(self.points)


def _check_invariants(arr: np.ndarray) -> None:
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        rows = arr.shape[0] if arr.ndim >= 1 else 0
        cols = arr.shape[1] if arr.ndim >= 2 else 0
        raise NotSquareError(rows, cols)
    bad = ~(arr > 0)  # catches <= 0 and NaN in one predicate
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise NonPositiveEntryError(int(i), int(j), float(arr[i, j]))
    asym = arr != arr.T
    if asym.any():
        i, j = np.argwhere(asym)[0]
        raise AsymmetricEntryError(int(i), int(j), float(arr[i, j]), float(arr[j, i]))
    diag = np.diagonal(arr)
    finite_diag = np.isfinite(diag)
    if finite_diag.any():
        i = int(np.argmax(finite_diag))
        raise FiniteDiagonalError(i, float(diag[i]))


def validate(raw) -> AffinityMatrix:
    """Check a raw square array and wrap it as an :class:`AffinityMatrix`.

    Parameters
    ----------
    raw : array-like of shape (n, n)
        Extended reals; use ``float('inf')`` / ``numpy.inf`` for infinite
        affinity. The input is copied, never mutated.

    Raises
    ------
    NotSquareError, AsymmetricEntryError, NonPositiveEntryError,
    FiniteDiagonalError
        On the first violated invariant, scanning entries in row-major
        order.
    """
    return AffinityMatrix(np.asarray(raw, dtype=np.float64))


def threshold(A: AffinityMatrix, lam: float) -> AffinityMatrix:
    """Promote every entry strictly above ``lam`` to infinity.

    Entries with value <= ``lam`` are kept unchanged, so the comparison
    is strict: thresholding exactly at a value leaves that value finite.

    Raises
    ------
    NonPositiveThresholdError
        If ``lam`` is not strictly positive (NaN included).
    """
    if not lam > 0:
        raise NonPositiveThresholdError(lam)
    E = A.entries
    return AffinityMatrix(np.where(E > lam, np.inf, E))


def _reciprocal_distance_matrix(points: PointSet) -> AffinityMatrix:
    P = points.as_array()
    diff = P[:, None, :] - P[None, :, :]
    d = np.sqrt((diff * diff).sum(axis=-1))
    with np.errstate(divide="ignore"):
        E = 1.0 / d  # coincident points give inf, consistent with the axioms
    np.fill_diagonal(E, np.inf)
    return AffinityMatrix(E)


def metric_affinity(points: PointSet) -> AffinityMatrix:
    """Affinity as the reciprocal of Euclidean distance.

    ``A[i, j] = 1 / dist(p_i, p_j)`` for distinct indices; coincident
    points get infinite affinity (the 1/0 convention), and the diagonal
    is infinite by definition.
    """
    return _reciprocal_distance_matrix(points)


def inverse_distance_affinity(centers: PointSet) -> AffinityMatrix:
    """Reciprocal-distance affinity between geographic center points.

    Identical conventions to :func:`metric_affinity`; kept as a separate
    entry point for matrices built from district/region centroids.
    """
    return _reciprocal_distance_matrix(centers)


def boundary_affinity(
    shared_lengths, *, epsilon: float = DEFAULT_ZERO_EPSILON
) -> AffinityMatrix:
    """Affinity from shared boundary lengths between regions.

    ``A[i, j] = l[i, j]`` for positive lengths. Pairs that share no
    boundary (``l[i, j] == 0``) get the ``epsilon`` floor so that "no
    connection" sits below every threshold of interest while the matrix
    stays strictly positive. The diagonal becomes infinite regardless of
    the input diagonal.

    Raises
    ------
    NotSquareError, AsymmetricEntryError, NegativeLengthError
    """
    L = np.array(shared_lengths, dtype=np.float64, copy=True)
    if L.ndim != 2 or L.shape[0] != L.shape[1]:
        rows = L.shape[0] if L.ndim >= 1 else 0
        cols = L.shape[1] if L.ndim >= 2 else 0
        raise NotSquareError(rows, cols)
    neg = ~(L >= 0)  # negative or NaN
    if neg.any():
        i, j = np.argwhere(neg)[0]
        raise NegativeLengthError(int(i), int(j), float(L[i, j]))
    asym = L != L.T
    if asym.any():
        i, j = np.argwhere(asym)[0]
        raise AsymmetricEntryError(int(i), int(j), float(L[i, j]), float(L[j, i]))
    if not epsilon > 0:
        raise ValueError(f"epsilon floor must be positive, got {epsilon!r}")
    E = np.where(L == 0.0, epsilon, L)
    np.fill_diagonal(E, np.inf)
    return AffinityMatrix(E)


def normalize(A: AffinityMatrix) -> AffinityMatrix:
    """Divide every finite entry by the maximum finite entry.

    The infinity pattern and the relative order of finite entries are
    preserved; the largest finite entry of the result is exactly 1.

    Raises
    ------
    AllInfiniteError
        If the matrix has no finite off-diagonal entry.
    """
    M = A.max_finite()
    if M is None:
        raise AllInfiniteError()
    E = A.entries
    return AffinityMatrix(np.where(np.isfinite(E), E / M, E))
