"""Monotone-matrix tests and non-negative left inverses.

A matrix X is monotone when X x >= 0 forces x >= 0, which happens exactly
when X has an entrywise non-negative left inverse, or again when the cone
spanned by its rows contains the whole non-negative orthant. The general
test here settles cone membership with non-negative least squares; for
non-negative matrices a much cheaper structural test applies, because
non-negative vectors are orthogonal exactly when their supports are
disjoint.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NotNonnegativeError, NotSquareError, RankDeficientError, SingularError
from .numerics import DEFAULT_TOL, Tolerances, as_matrix, is_nonneg, rank


@dataclass(frozen=True)
class MonotoneCertificate:
    """Verdict plus evidence: a non-negative left inverse when monotone,
    and the orthogonal row indices when the structural shortcut found them."""

    monotone: bool
    nonneg_left_inverse: Optional[np.ndarray] = None
    orthogonal_row_set: Optional[list[int]] = None


def nonneg_lstsq(A, b, max_iter: Optional[int] = None) -> tuple[np.ndarray, float]:
    """Minimize ||A x - b|| over x >= 0 by the classic active-set method.

    Variables enter the passive set one at a time by steepest gradient;
    whenever the unconstrained solve on the passive set goes negative, the
    iterate backtracks to the boundary and the blocking variables leave
    the set. The problem is normalized to unit scale so the termination
    tolerance is dimensionless, the returned point is always feasible, and
    the residual norm is recomputed from it on the original data.
    """
    A_in = np.asarray(A, dtype=float)
    b_in = np.asarray(b, dtype=float).reshape(-1)
    m, n = A_in.shape
    a_scale = float(np.abs(A_in).max(initial=0.0))
    b_scale = float(np.abs(b_in).max(initial=0.0))
    if a_scale == 0.0 or b_scale == 0.0:
        return np.zeros(n), float(np.linalg.norm(b_in))
    A = A_in / a_scale
    b = b_in / b_scale
    if max_iter is None:
        max_iter = 30 * (n + 1)
    eps = np.finfo(float).eps
    grad_tol = 10.0 * eps * max(m, n)

    x = np.zeros(n)
    passive = np.zeros(n, dtype=bool)
    gradient = A.T @ b
    steps = 0

    def solve_on_passive() -> np.ndarray:
        z = np.zeros(n)
        cols = np.flatnonzero(passive)
        if cols.size:
            z[cols] = np.linalg.lstsq(A[:, cols], b, rcond=None)[0]
        return z

    while steps < max_iter and not passive.all():
        steps += 1
        free = np.flatnonzero(~passive)
        if gradient[free].max() <= grad_tol:
            break
        passive[free[np.argmax(gradient[free])]] = True
        z = solve_on_passive()
        feasible = True
        while passive.any() and z[passive].min() <= 0.0:
            steps += 1
            if steps > max_iter:
                feasible = False  # anti-cycling cap: keep the last feasible x
                break
            blocking = passive & (z <= 0.0)
            movable = blocking & (x - z > 0.0)
            if movable.any():
                alpha = float((x[movable] / (x[movable] - z[movable])).min())
                x = x + alpha * (z - x)
                passive &= x > eps * max(1.0, float(np.abs(x).max(initial=0.0)))
            else:
                # Degenerate entries sitting exactly at zero: drop them.
                passive &= ~blocking
            x[~passive] = 0.0
            z = solve_on_passive()
        if not feasible:
            break
        x = z
        gradient = A.T @ (b - A @ x)
    x = np.maximum(x, 0.0) * (b_scale / a_scale)
    return x, float(np.linalg.norm(b_in - A_in @ x))


def is_monotone_general(X, tol: Tolerances = DEFAULT_TOL) -> MonotoneCertificate:
    """Cone-membership oracle for arbitrary real matrices.

    For each standard basis vector e_j of R^m the feasibility of
    X^T c = e_j with c >= 0 is decided by an active-set non-negative
    least-squares solve, accepted when the residual stays below
    eq_tol * (1 + ||e_j||) so the test is consistent across scalings.
    A matrix with fewer rows than columns is never monotone.
    """
    A = as_matrix(X, "X")
    n, m = A.shape
    if n < m:
        return MonotoneCertificate(False)
    inverse_rows = np.empty((m, n))
    for j in range(m):
        target = np.zeros(m)
        target[j] = 1.0
        coeffs, residual = nonneg_lstsq(A.T, target)
        if residual > tol.eq_tol * (1.0 + np.linalg.norm(target)):
            return MonotoneCertificate(False)
        inverse_rows[j] = coeffs
    return MonotoneCertificate(True, nonneg_left_inverse=inverse_rows)


def is_monotone_nonneg_square(X, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Orthogonal-columns test for a square, invertible, non-negative matrix.

    Equivalent to X being a generalized permutation matrix: exactly one
    positive entry per row and per column.
    """
    A = as_matrix(X, "X")
    n, m = A.shape
    if n != m:
        raise NotSquareError(f"expected a square matrix, got {n}x{m}")
    if not is_nonneg(A, tol):
        raise NotNonnegativeError("matrix has negative entries")
    if rank(A, tol) < n:
        raise SingularError("matrix is singular")
    gram = A.T @ A
    off_diagonal = gram - np.diag(np.diag(gram))
    return bool(np.abs(off_diagonal).max() <= tol.eq_tol)


def is_monotone_nonneg_rect(X, tol: Tolerances = DEFAULT_TOL) -> MonotoneCertificate:
    """Orthogonal-row search for a non-negative full-column-rank matrix.

    m nonzero rows with pairwise disjoint supports inside m columns must
    each occupy a single, distinct column, so the scan looks for the first
    row supported on each column alone. On success the left inverse picks
    those rows, scaled to invert the diagonal block they form.
    """
    A = as_matrix(X, "X")
    n, m = A.shape
    if not is_nonneg(A, tol):
        raise NotNonnegativeError("matrix has negative entries")
    if n < m or rank(A, tol) < m:
        raise RankDeficientError(f"{n}x{m} matrix does not have full column rank")
    support = A > tol.nonneg_tol
    support_sizes = support.sum(axis=1)
    pivot_for_column: dict[int, int] = {}
    for i in range(n):
        if support_sizes[i] != 1:
            continue
        j = int(np.argmax(support[i]))
        if j not in pivot_for_column:
            pivot_for_column[j] = i
    if len(pivot_for_column) < m:
        return MonotoneCertificate(False)
    Jdag = np.zeros((m, n))
    for j, i in pivot_for_column.items():
        Jdag[j, i] = 1.0 / A[i, j]
    rows = sorted(pivot_for_column.values())
    return MonotoneCertificate(True, nonneg_left_inverse=Jdag, orthogonal_row_set=rows)
