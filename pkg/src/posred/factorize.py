"""Non-negative full-rank factorization of a projector onto a subspace.

A subspace V admits a projector Pi = J @ Jdag with J, Jdag >= 0 exactly
when some m rows of any basis form an invertible block V0 with
V1 @ inv(V0) >= 0 for the remaining rows V1. Scanning unordered row
subsets suffices: reordering rows inside V0 only permutes the columns of
V1 @ inv(V0), which changes neither its sign pattern nor the rank of V0.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BudgetExceededError
from .numerics import (DEFAULT_TOL, SubspaceBasis, Tolerances, is_nonneg, rank,
                       row_subsets)

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class Factorization:
    """Projector factors J (n x m) and Jdag (m x n) with Jdag @ J = I.

    pivot_rows lists the rows of J that form the identity block; the pure
    0/1 selector Jdag is the canonical left inverse for that normalization.
    The record itself is not validated, so mixed-sign pairs can be carried
    for comparison experiments; verify_factorization does the checking.
    """

    J: np.ndarray
    Jdag: np.ndarray
    pivot_rows: list[int]

    @property
    def dimension(self) -> int:
        return self.J.shape[1]


def find_nonneg_factorization(
    V: SubspaceBasis,
    tol: Tolerances = DEFAULT_TOL,
    budget: int = DEFAULT_BUDGET,
) -> Optional[Factorization]:
    """First-hit subset scan for non-negative projector factors.

    Row subsets of size m are tried in lexicographic order; the first
    subset S whose block V0 = basis[S] is invertible with
    basis[~S] @ inv(V0) >= 0 yields J = basis @ inv(V0) (its rows at S are
    the identity) and the 0/1 selector Jdag. Returns None when no subset
    qualifies; raises BudgetExceededError without scanning when C(n, m)
    exceeds the budget, so the caller can raise it or fall back to the
    algebra route.
    """
    B = V.basis
    n, m = B.shape
    total = math.comb(n, m)
    if total > budget:
        raise BudgetExceededError(
            f"C({n},{m}) = {total} row subsets exceeds the budget of {budget}")
    mask = np.empty(n, dtype=bool)
    for subset in row_subsets(n, m):
        V0 = B[subset, :]
        if rank(V0, tol) < m:
            continue
        V0_inv = np.linalg.inv(V0)
        mask[:] = True
        mask[subset] = False
        if not is_nonneg(B[mask] @ V0_inv, tol):
            continue
        J = B @ V0_inv
        Jdag = np.zeros((m, n))
        Jdag[np.arange(m), subset] = 1.0
        log.debug("non-negative factorization found at rows %s", subset)
        return Factorization(J, Jdag, list(subset))
    log.debug("no qualifying subset among %d", total)
    return None


def verify_factorization(F: Factorization, V: SubspaceBasis, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Independent recheck of the factorization invariants.

    Both factors non-negative, Jdag @ J = I within eq_tol, and Im(J)
    equal to the span of V (rank of [J | basis] stays at m).
    """
    m = V.dimension
    if F.J.shape != (V.ambient_dim, m) or F.Jdag.shape != (m, V.ambient_dim):
        return False
    if not (is_nonneg(F.J, tol) and is_nonneg(F.Jdag, tol)):
        return False
    if np.abs(F.Jdag @ F.J - np.eye(m)).max() > tol.eq_tol:
        return False
    return rank(np.hstack([F.J, V.basis]), tol) == m
