"""Subset-search factorization against an independent linear-programming
oracle, plus the structural invariants of the returned factors."""
import numpy as np
import pytest
import scipy.optimize

from posred import (BudgetExceededError, Factorization, SubspaceBasis,
                    Tolerances, find_nonneg_factorization,
                    is_monotone_nonneg_rect, rank, verify_factorization)
from conftest import stubborn_span

TOL = Tolerances()


def nonneg_projector_exists(basis: np.ndarray) -> bool:
    """Independent oracle: a projector onto the column space with
    non-negative factors exists iff some X solves X @ V = I with
    V @ X >= 0 entrywise. V @ X is then a non-negative idempotent fixing
    the space, and any non-negative factor pair (J, Jdag) with J = V T
    yields such an X = T Jdag. Solved as one LP over the entries of X."""
    n, m = basis.shape
    A_eq = np.kron(basis.T, np.eye(m))   # (V^T kron I) vec(X) = vec(X V), column-major
    b_eq = np.eye(m).flatten(order="F")
    A_ub = -np.kron(np.eye(n), basis)    # -(I kron V) vec(X) = -vec(V X) <= 0
    b_ub = np.zeros(n * n)
    result = scipy.optimize.linprog(
        c=np.zeros(n * m), A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq,
        bounds=(None, None), method="highs")
    return result.status == 0


class TestLpOracleItself:
    def test_coordinate_plane_feasible(self):
        assert nonneg_projector_exists(np.array([[1.0, 0.0], [0.0, 1.0],
                                                 [0.0, 0.0], [0.0, 0.0]]))

    def test_mixed_sign_line_infeasible(self):
        assert not nonneg_projector_exists(np.array([[1.0], [1.0], [-1.0]]))

    def test_tower_basis_feasible(self):
        assert nonneg_projector_exists(np.array([[1.0, 0.0], [0.0, 1.0],
                                                 [1.0, 1.0], [1.0, 1.0]]))

    def test_stubborn_span_infeasible(self):
        assert not nonneg_projector_exists(stubborn_span())


class TestFind:
    def test_coordinate_plane_in_disguise(self):
        # Columns (1,1,0,0) and (2,1,0,0) span the coordinate plane.
        V = SubspaceBasis(np.array([[1.0, 2.0], [1.0, 1.0],
                                    [0.0, 0.0], [0.0, 0.0]]))
        F = find_nonneg_factorization(V)
        assert F is not None
        assert F.pivot_rows == [0, 1]
        np.testing.assert_allclose(F.J, [[1.0, 0.0], [0.0, 1.0],
                                         [0.0, 0.0], [0.0, 0.0]], atol=1e-12)
        np.testing.assert_allclose(F.Jdag, [[1.0, 0.0, 0.0, 0.0],
                                            [0.0, 1.0, 0.0, 0.0]])

    def test_three_towers(self):
        V = SubspaceBasis(np.array([[0.0, 2.0, 0.0],
                                    [1.0, 0.0, 4.0],
                                    [1.0, 1.0, 1.0],
                                    [1.0, 1.0, 1.0]]))
        F = find_nonneg_factorization(V)
        assert F is not None
        assert F.pivot_rows == [0, 1, 2]
        np.testing.assert_allclose(F.J, [[1.0, 0.0, 0.0],
                                         [0.0, 1.0, 0.0],
                                         [0.0, 0.0, 1.0],
                                         [0.0, 0.0, 1.0]], atol=1e-12)

    def test_mixed_sign_line_absent(self):
        # All three 1x1 pivot choices leave a negative ratio.
        V = SubspaceBasis(np.array([[1.0], [1.0], [-1.0]]))
        assert find_nonneg_factorization(V) is None

    def test_stubborn_span_absent(self):
        assert find_nonneg_factorization(SubspaceBasis(stubborn_span())) is None

    def test_first_hit_is_lexicographic(self):
        V = SubspaceBasis(np.array([[1.0, 0.0], [0.0, 1.0],
                                    [1.0, 1.0], [2.0, 1.0]]))
        F = find_nonneg_factorization(V)
        assert F.pivot_rows == [0, 1]

    def test_budget(self):
        V = SubspaceBasis(np.eye(4)[:, :2])
        with pytest.raises(BudgetExceededError):
            find_nonneg_factorization(V, budget=1)

    def test_basis_change_invariance(self):
        rng = np.random.default_rng(17)
        for _ in range(30):
            n, m = 5, 2
            raw = rng.normal(size=(n, m))
            V1 = SubspaceBasis(raw)
            T = rng.normal(size=(m, m))
            while abs(np.linalg.det(T)) < 0.1:
                T = rng.normal(size=(m, m))
            V2 = SubspaceBasis(raw @ T)
            F1 = find_nonneg_factorization(V1)
            F2 = find_nonneg_factorization(V2)
            assert (F1 is None) == (F2 is None)
            if F1 is not None:
                # Same image, hence the same projector target.
                assert rank(np.hstack([F1.J, F2.J])) == m

    def test_projector_is_idempotent(self):
        V = SubspaceBasis(np.array([[1.0, 0.0], [0.0, 1.0],
                                    [1.0, 1.0], [1.0, 1.0]]))
        F = find_nonneg_factorization(V)
        Pi = F.J @ F.Jdag
        np.testing.assert_allclose(Pi @ Pi, Pi, atol=TOL.eq_tol)

    def test_returned_factor_is_monotone(self):
        rng = np.random.default_rng(29)
        hits = 0
        for _ in range(40):
            X = np.where(rng.random((5, 2)) < 0.5, rng.uniform(0.1, 1.0, (5, 2)), 0.0)
            if np.linalg.matrix_rank(X) < 2:
                continue
            F = find_nonneg_factorization(SubspaceBasis(X))
            if F is None:
                continue
            hits += 1
            assert is_monotone_nonneg_rect(F.J).monotone
        assert hits > 5


def test_search_matches_lp_oracle():
    rng = np.random.default_rng(2718)
    found, absent = 0, 0
    for trial in range(120):
        m = int(rng.integers(1, 4))
        n = int(rng.integers(m, 6))
        if trial % 3 == 0:
            raw = rng.normal(size=(n, m))                 # mixed-sign spans
        else:
            raw = np.where(rng.random((n, m)) < 0.6,
                           rng.uniform(0.1, 1.0, (n, m)), 0.0)
        if np.linalg.matrix_rank(raw) < m:
            continue
        V = SubspaceBasis(raw)
        F = find_nonneg_factorization(V)
        assert (F is not None) == nonneg_projector_exists(raw)
        if F is None:
            absent += 1
        else:
            found += 1
            assert verify_factorization(F, V)
    assert found > 15 and absent > 15


class TestVerify:
    V = SubspaceBasis(np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 1.0]]))

    def test_accepts_search_output(self):
        F = find_nonneg_factorization(self.V)
        assert verify_factorization(F, self.V)

    def test_accepts_rescaled_pair(self):
        F = find_nonneg_factorization(self.V)
        scaled = Factorization(F.J * 2.0, F.Jdag / 2.0, F.pivot_rows)
        assert verify_factorization(scaled, self.V)

    def test_rejects_mixed_sign_left_inverse(self):
        F = find_nonneg_factorization(self.V)
        mixed = np.linalg.solve(F.J.T @ F.J, F.J.T)
        mixed[0, 2] -= 1.0
        mixed[0, 0] += 1.0  # still a left inverse? no: perturbed on purpose
        bad = Factorization(F.J, mixed, F.pivot_rows)
        assert not verify_factorization(bad, self.V)

    def test_rejects_wrong_image(self):
        F = find_nonneg_factorization(self.V)
        other = SubspaceBasis(np.eye(4)[:, :2])
        assert not verify_factorization(F, other)
