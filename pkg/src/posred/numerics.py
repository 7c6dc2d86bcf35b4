"""Tolerance-controlled dense linear algebra shared by every other module.

All operations are pure functions over float64 arrays: rank and column
bases by Gaussian elimination with an explicit relative pivot threshold,
Moore-Penrose left inverses, entrywise sign tests, and deterministic
row-subset enumeration.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import NonFiniteError, RankDeficientError, ZeroMatrixError


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used throughout the package.

    rank_tol is relative: a pivot counts only if it exceeds rank_tol times
    the largest absolute entry of the matrix under test. nonneg_tol is the
    sign-test floor (entries >= -nonneg_tol count as non-negative) and
    eq_tol the entrywise equality tolerance.
    """

    rank_tol: float = 1e-10
    nonneg_tol: float = 1e-9
    eq_tol: float = 1e-8

    def __post_init__(self):
        if min(self.rank_tol, self.nonneg_tol, self.eq_tol) < 0:
            raise ValueError("tolerances must be non-negative")


DEFAULT_TOL = Tolerances()


def as_matrix(M, name: str = "matrix") -> np.ndarray:
    """Coerce to a 2-D float64 array, rejecting NaN and infinities."""
    A = np.asarray(M, dtype=float)
    if A.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {A.shape}")
    if A.size and not np.isfinite(A).all():
        raise NonFiniteError(f"{name} contains non-finite entries")
    return A


def rank(M, tol: Tolerances = DEFAULT_TOL) -> int:
    """Numerical rank via Gaussian elimination with partial pivoting.

    The pivot threshold rank_tol * max|entry| is fixed once from the input
    before any elimination step.
    """
    A = as_matrix(M).copy()
    if A.size == 0:
        return 0
    threshold = tol.rank_tol * np.abs(A).max()
    rows, cols = A.shape
    r = 0
    for col in range(cols):
        if r == rows:
            break
        pivot = r + int(np.argmax(np.abs(A[r:, col])))
        if abs(A[pivot, col]) <= threshold:
            continue
        if pivot != r:
            A[[r, pivot], col:] = A[[pivot, r], col:]
        A[r + 1:, col:] -= np.outer(A[r + 1:, col] / A[r, col], A[r, col:])
        r += 1
    return r


class SubspaceBasis:
    """Full-column-rank matrix whose columns span a subspace of R^n."""

    def __init__(self, basis, tol: Tolerances = DEFAULT_TOL):
        B = as_matrix(basis, "basis")
        if B.shape[1] == 0:
            raise ValueError("a basis needs at least one column")
        if rank(B, tol) < B.shape[1]:
            raise RankDeficientError("basis columns are linearly dependent")
        B = B.copy()
        B.setflags(write=False)
        self.basis = B

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def dimension(self) -> int:
        return self.basis.shape[1]

    def __repr__(self) -> str:
        return f"SubspaceBasis(dim {self.dimension} in R^{self.ambient_dim})"


def column_space_basis(M, tol: Tolerances = DEFAULT_TOL) -> SubspaceBasis:
    """Greedy left-to-right column selection.

    A column is kept exactly when it increases the rank of the columns
    kept so far; kept columns are returned in their original order.
    """
    A = as_matrix(M)
    selected: list[int] = []
    for j in range(A.shape[1]):
        if len(selected) == A.shape[0]:
            break
        if rank(A[:, selected + [j]], tol) > len(selected):
            selected.append(j)
    if not selected:
        raise ZeroMatrixError("matrix has rank 0; no column-space basis")
    return SubspaceBasis(A[:, selected], tol)


def left_inverse(M, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose left inverse (M^T M)^{-1} M^T of a full-column-rank matrix."""
    A = as_matrix(M)
    n, m = A.shape
    if rank(A, tol) < m:
        raise RankDeficientError(f"{n}x{m} matrix has rank below {m}")
    L = np.linalg.solve(A.T @ A, A.T)
    if np.abs(L @ A - np.eye(m)).max() > tol.eq_tol:
        raise RankDeficientError("left inverse is inaccurate; matrix is numerically rank-deficient")
    return L


def is_nonneg(M, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True when every entry is >= -nonneg_tol."""
    A = as_matrix(M)
    return bool(A.size == 0 or A.min() >= -tol.nonneg_tol)


def row_subsets(n: int, m: int) -> Iterator[list[int]]:
    """All m-element subsets of range(n) as sorted lists, in lexicographic order."""
    if not 0 < m <= n:
        raise ValueError(f"need 0 < m <= n, got m={m}, n={n}")
    for combo in itertools.combinations(range(n), m):
        yield list(combo)
