"""Coordinate-wise product algebras driven by a reference vector.

For a reference vector p, strictly positive on its support, the product
``[x ^ y]_i = x_i y_i / p_i`` makes the supported coordinates a
commutative algebra with unit p. A subspace closed under it is spanned by
non-negative idempotents with pairwise disjoint supports summing to p,
which is exactly the structure that lets the projector onto the subspace
factor with non-negative factors. This module closes a subspace to the
smallest such algebra containing it (and its unit) and extracts the
idempotent generators.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (ClosureMismatchError, DimensionMismatchError,
                     NonFiniteError, NotNonnegativeError, SupportFailureError,
                     UnsupportedCoordinateError, VerificationError)
from .factorize import Factorization
from .monotone import is_monotone_nonneg_rect
from .numerics import DEFAULT_TOL, SubspaceBasis, Tolerances, column_space_basis


class ReferenceVector:
    """Non-negative vector, strictly positive exactly on its support.

    Entries at or below the sign tolerance are snapped to exact zeros so
    that support bookkeeping downstream stays exact.
    """

    def __init__(self, p, tol: Tolerances = DEFAULT_TOL):
        p = np.array(p, dtype=float).reshape(-1)
        if p.size and not np.isfinite(p).all():
            raise NonFiniteError("reference vector has non-finite entries")
        if p.size and p.min() < -tol.nonneg_tol:
            raise NotNonnegativeError("reference vector has negative entries")
        positive = p > tol.nonneg_tol
        p[~positive] = 0.0
        p.setflags(write=False)
        self.p = p
        self.support = np.flatnonzero(positive)

    @property
    def dim(self) -> int:
        return self.p.shape[0]

    def __repr__(self) -> str:
        return f"ReferenceVector({self.p.tolist()})"


@dataclass(frozen=True)
class DistortedAlgebra:
    """Reference vector, idempotent generator columns, and the support
    partition they indicate: generator k equals p on blocks[k], 0 elsewhere."""

    p: ReferenceVector
    generators: np.ndarray
    blocks: tuple[tuple[int, ...], ...]

    @property
    def dimension(self) -> int:
        return self.generators.shape[1]


def _vector(x, dim: int, name: str) -> np.ndarray:
    v = np.asarray(x, dtype=float).reshape(-1)
    if v.shape[0] != dim:
        raise DimensionMismatchError(f"{name} must have length {dim}")
    if v.size and not np.isfinite(v).all():
        raise NonFiniteError(f"{name} has non-finite entries")
    return v


def wedge(x, y, p: ReferenceVector, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Product x_i y_i / p_i on the support of p, zero elsewhere.

    Both vectors must vanish off the support; p itself is the unit.
    """
    x = _vector(x, p.dim, "x")
    y = _vector(y, p.dim, "y")
    off = np.ones(p.dim, dtype=bool)
    off[p.support] = False
    if off.any():
        weight = max(np.abs(x[off]).max(initial=0.0), np.abs(y[off]).max(initial=0.0))
        if weight > tol.nonneg_tol:
            raise UnsupportedCoordinateError("vector has weight outside supp(p)")
    out = np.zeros(p.dim)
    s = p.support
    out[s] = x[s] * y[s] / p.p[s]
    return out


def choose_p(V: SubspaceBasis, seed: Optional[int] = None,
             tol: Tolerances = DEFAULT_TOL, retries: int = 32) -> ReferenceVector:
    """Reference vector as a combination of the basis columns.

    Unit weights work whenever the basis is entrywise non-negative, since
    sums of non-negative columns cannot cancel and the support of the sum
    is then the support of the whole subspace. Otherwise seeded random
    weights in [1, 2] are retried a bounded number of times before the
    search is declared infeasible.
    """
    B = V.basis
    support = np.flatnonzero(np.abs(B).max(axis=1) > tol.nonneg_tol)

    def admissible(candidate: np.ndarray) -> bool:
        return bool((candidate[support] > tol.nonneg_tol).all())

    def embed(candidate: np.ndarray) -> ReferenceVector:
        p = np.zeros(V.ambient_dim)
        p[support] = candidate[support]
        return ReferenceVector(p, tol)

    candidate = B.sum(axis=1)
    if admissible(candidate):
        return embed(candidate)
    rng = np.random.default_rng(seed)
    for _ in range(retries):
        candidate = B @ rng.uniform(1.0, 2.0, B.shape[1])
        if admissible(candidate):
            return embed(candidate)
    raise SupportFailureError(
        "no combination of the basis is strictly positive on the subspace support")


def closure(V: SubspaceBasis, p: ReferenceVector,
            tol: Tolerances = DEFAULT_TOL) -> DistortedAlgebra:
    """Smallest p-product algebra containing span(V) and the unit p.

    Dividing by p on its support turns the product into the plain
    entrywise one. There the closure is computed by fixpoint iteration:
    append all pairwise products of the current basis columns (each
    rescaled to unit peak; numerically dead products are dropped),
    re-extract a column basis, and stop once the rank stalls, which
    certifies closedness. The closed space is spanned by indicators of
    coordinate groups; grouping equal rows of an orthonormalized closure
    basis recovers them, and multiplying each indicator back by p gives
    the idempotent generators.
    """
    if p.dim != V.ambient_dim:
        raise DimensionMismatchError("reference vector length does not match the ambient dimension")
    s = p.support
    if s.size == 0:
        raise SupportFailureError("reference vector has empty support")
    off = np.ones(V.ambient_dim, dtype=bool)
    off[s] = False
    B = V.basis
    if off.any() and np.abs(B[off, :]).max(initial=0.0) > tol.nonneg_tol:
        raise UnsupportedCoordinateError("subspace has weight outside supp(p)")

    transformed = B[s, :] / p.p[s][:, None]
    unit = np.ones((s.size, 1))
    basis = column_space_basis(np.hstack([transformed, unit]), tol).basis
    while True:
        dim = basis.shape[1]
        products = []
        for i in range(dim):
            for j in range(i, dim):
                col = basis[:, i] * basis[:, j]
                peak = np.abs(col).max()
                if peak > tol.eq_tol:
                    products.append(col / peak)
        stacked = np.column_stack([basis] + products) if products else basis
        basis = column_space_basis(stacked, tol).basis
        if basis.shape[1] == dim:
            break

    ortho, _ = np.linalg.qr(basis)
    groups: list[list[int]] = []
    representatives: list[np.ndarray] = []
    for i, row in enumerate(ortho):
        for k, rep in enumerate(representatives):
            if np.abs(row - rep).max() <= tol.eq_tol:
                groups[k].append(i)
                break
        else:
            representatives.append(row)
            groups.append([i])
    if len(groups) != basis.shape[1]:
        raise ClosureMismatchError(
            f"{len(groups)} coordinate groups for a closure of rank {basis.shape[1]}")

    blocks = tuple(tuple(int(s[i]) for i in group) for group in groups)
    generators = np.zeros((V.ambient_dim, len(blocks)))
    for k, block in enumerate(blocks):
        idx = list(block)
        generators[idx, k] = p.p[idx]
    return DistortedAlgebra(p, generators, blocks)


def algebra_factorization(algebra: DistortedAlgebra,
                          tol: Tolerances = DEFAULT_TOL) -> Factorization:
    """Non-negative projector factors for the algebra.

    Disjoint generator supports make the generator matrix monotone, so a
    pivot row per generator always exists. Columns are rescaled so the
    pivot rows of J form an identity block, with the plain 0/1 selector as
    Jdag; the projector J @ Jdag is unchanged by that rescaling.
    """
    G = algebra.generators
    certificate = is_monotone_nonneg_rect(G, tol)
    if not certificate.monotone:
        raise VerificationError(
            "algebra generator matrix is not monotone; tolerance pathology")
    m = G.shape[1]
    pivots = [int(np.flatnonzero(certificate.nonneg_left_inverse[k])[0]) for k in range(m)]
    J = G / G[pivots, np.arange(m)]
    Jdag = np.zeros((m, G.shape[0]))
    Jdag[np.arange(m), pivots] = 1.0
    return Factorization(J, Jdag, sorted(pivots))


def is_distorted_algebra(V: SubspaceBasis, p: ReferenceVector,
                         tol: Tolerances = DEFAULT_TOL) -> bool:
    """True when span(V) is already closed under the p-product."""
    return closure(V, p, tol).dimension == V.dimension
