"""Positive LTI systems: reachability and observability objects, Markov
parameters, projection-based reduction, equivalence, and simulation."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (DimensionMismatchError, NegativeInputError,
                     NotInvariantError, NotPositiveError, VerificationError)
from .factorize import Factorization
from .numerics import (DEFAULT_TOL, SubspaceBasis, Tolerances, as_matrix,
                       column_space_basis, is_nonneg, rank)

TIME_DOMAINS = ("discrete", "continuous")


def _frozen(A: np.ndarray) -> np.ndarray:
    out = A.copy()
    out.setflags(write=False)
    return out


class PositiveLtiSystem:
    """State-space triple (A, B, C) with entrywise non-negative matrices.

    C defaults to the identity (full state readout). The time-domain tag
    is metadata only: the reduction machinery is representation-level and
    identical for both, while simulation accepts discrete systems only.
    """

    def __init__(self, A, B, C=None, time_domain: str = "discrete",
                 tol: Tolerances = DEFAULT_TOL):
        A = as_matrix(A, "A")
        B = as_matrix(B, "B")
        n = A.shape[0]
        if A.shape[1] != n:
            raise DimensionMismatchError(f"A must be square, got {A.shape}")
        if B.shape[0] != n:
            raise DimensionMismatchError(f"B must have {n} rows, got {B.shape}")
        C = np.eye(n) if C is None else as_matrix(C, "C")
        if C.shape[1] != n:
            raise DimensionMismatchError(f"C must have {n} columns, got {C.shape}")
        if time_domain not in TIME_DOMAINS:
            raise ValueError(f"time_domain must be one of {TIME_DOMAINS}")
        for name, M in (("A", A), ("B", B), ("C", C)):
            if not is_nonneg(M, tol):
                raise NotPositiveError(f"system is not positive: {name} has negative entries")
        self.A = _frozen(A)
        self.B = _frozen(B)
        self.C = _frozen(C)
        self.time_domain = time_domain

    @property
    def dim(self) -> int:
        return self.A.shape[0]

    @property
    def num_inputs(self) -> int:
        return self.B.shape[1]

    @property
    def num_outputs(self) -> int:
        return self.C.shape[0]

    def transpose(self) -> "PositiveLtiSystem":
        """The dual system (A^T, C^T, B^T); swaps reachability with observability."""
        return PositiveLtiSystem(self.A.T, self.C.T, self.B.T, self.time_domain)

    def __repr__(self) -> str:
        return (f"PositiveLtiSystem(n={self.dim}, inputs={self.num_inputs}, "
                f"outputs={self.num_outputs}, {self.time_domain})")


@dataclass(frozen=True)
class MarkovSequence:
    """Impulse-response coefficients C A^k B for k = 0..horizon."""

    horizon: int
    coefficients: list[np.ndarray]


def reachability_matrix(S: PositiveLtiSystem) -> np.ndarray:
    """The n x (n * inputs) block matrix [B, AB, ..., A^(n-1) B]."""
    blocks = [S.B]
    P = S.B
    for _ in range(S.dim - 1):
        P = S.A @ P
        blocks.append(P)
    return np.hstack(blocks)


def reachable_subspace(S: PositiveLtiSystem, tol: Tolerances = DEFAULT_TOL) -> SubspaceBasis:
    """Truncated reachability matrix: independent columns of [B, AB, ...]."""
    return column_space_basis(reachability_matrix(S), tol)


def observability_matrix(S: PositiveLtiSystem) -> np.ndarray:
    """The (n * outputs) x n stacked matrix [C; CA; ...; C A^(n-1)]."""
    blocks = [S.C]
    P = S.C
    for _ in range(S.dim - 1):
        P = P @ S.A
        blocks.append(P)
    return np.vstack(blocks)


def markov_parameters(A, B, C, horizon: int) -> list[np.ndarray]:
    """Coefficients C A^k B for k = 0..horizon by iterated multiplication."""
    if horizon < 0:
        raise ValueError("horizon must be non-negative")
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    C = as_matrix(C, "C")
    coefficients = []
    P = B
    for _ in range(horizon + 1):
        coefficients.append(C @ P)
        P = A @ P
    return coefficients


def markov(S: PositiveLtiSystem, horizon: int) -> MarkovSequence:
    """Markov coefficients of the system up to the given horizon (inclusive)."""
    return MarkovSequence(horizon, markov_parameters(S.A, S.B, S.C, horizon))


def markov_match(first: list[np.ndarray], second: list[np.ndarray],
                 tol: Tolerances = DEFAULT_TOL) -> bool:
    """Entrywise comparison at eq_tol scaled by the largest coefficient
    magnitude (floored at one so all-zero sequences compare sanely)."""
    if len(first) != len(second):
        return False
    scale = 1.0
    for M in (*first, *second):
        if M.size:
            scale = max(scale, float(np.abs(M).max()))
    atol = tol.eq_tol * scale
    return all(np.abs(M1 - M2).max(initial=0.0) <= atol for M1, M2 in zip(first, second))


def project(S: PositiveLtiSystem, J, Jdag) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Raw restriction (Jdag A J, Jdag B, C J) with no validity checks.

    Used for comparison experiments where the factors may have mixed signs
    or the image may fail to be invariant; reduce() is the checked path.
    """
    J = as_matrix(J, "J")
    Jdag = as_matrix(Jdag, "Jdag")
    return Jdag @ S.A @ J, Jdag @ S.B, S.C @ J


def reduce(S: PositiveLtiSystem, F: Factorization, tol: Tolerances = DEFAULT_TOL) -> PositiveLtiSystem:
    """Restrict S to Im(F.J), returning (Jdag A J, Jdag B, C J).

    Requires Im(J) to be A-invariant and to contain Im(B), both checked by
    rank tests, so that the restriction reproduces every Markov
    coefficient. The reduced triple must come out non-negative; a
    violation (possible only with mixed-sign factors) is reported, never
    clamped.
    """
    J, Jdag = as_matrix(F.J, "J"), as_matrix(F.Jdag, "Jdag")
    if J.shape[0] != S.dim or Jdag.shape[1] != S.dim:
        raise DimensionMismatchError("factor shapes do not match the system dimension")
    r = rank(J, tol)
    if rank(np.hstack([J, S.A @ J]), tol) != r:
        raise NotInvariantError("Im(J) is not invariant under A")
    if rank(np.hstack([J, S.B]), tol) != r:
        raise NotInvariantError("Im(J) does not contain Im(B)")
    Ar, Br, Cr = project(S, J, Jdag)
    for name, M in (("A", Ar), ("B", Br), ("C", Cr)):
        if not is_nonneg(M, tol):
            raise NotPositiveError(
                f"reduced {name} has negative entries; the factors mix signs")
    return PositiveLtiSystem(Ar, Br, Cr, S.time_domain, tol)


def equivalent(S1: PositiveLtiSystem, S2: PositiveLtiSystem,
               tol: Tolerances = DEFAULT_TOL) -> bool:
    """Zero-state equivalence via Markov coefficients.

    Agreement for k = 0..(n1 + n2) implies agreement for every k by the
    Cayley-Hamilton theorem, so the comparison horizon is finite.
    """
    if S1.num_inputs != S2.num_inputs or S1.num_outputs != S2.num_outputs:
        raise DimensionMismatchError("input/output dimensions differ")
    horizon = S1.dim + S2.dim
    return markov_match(markov(S1, horizon).coefficients,
                        markov(S2, horizon).coefficients, tol)


def simulate(S: PositiveLtiSystem, x0, inputs, tol: Tolerances = DEFAULT_TOL) -> list[np.ndarray]:
    """Step x(k+1) = A x(k) + B u(k); returns outputs y(0)..y(len(inputs)).

    Initial state and inputs must be non-negative; the produced trajectory
    is certified non-negative as it is generated (positivity witness).
    """
    if S.time_domain != "discrete":
        raise ValueError("only discrete-time systems can be stepped")
    x = np.asarray(x0, dtype=float).reshape(-1)
    if x.shape[0] != S.dim:
        raise DimensionMismatchError(f"initial state must have length {S.dim}")
    if x.min(initial=0.0) < -tol.nonneg_tol:
        raise NegativeInputError("initial state has negative entries")
    outputs = [S.C @ x]
    for k, u in enumerate(inputs):
        u = np.asarray(u, dtype=float).reshape(-1)
        if u.shape[0] != S.num_inputs:
            raise DimensionMismatchError(f"input {k} must have length {S.num_inputs}")
        if u.min(initial=0.0) < -tol.nonneg_tol:
            raise NegativeInputError(f"input {k} has negative entries")
        x = S.A @ x + S.B @ u
        y = S.C @ x
        if x.min(initial=0.0) < -tol.nonneg_tol or y.min(initial=0.0) < -tol.nonneg_tol:
            raise VerificationError("trajectory of a positive system went negative")
        outputs.append(y)
    return outputs
