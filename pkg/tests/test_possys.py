"""Positive-system objects: reachability, Markov parameters, reduction,
equivalence, simulation."""
import numpy as np
import pytest

from posred import (DimensionMismatchError, Factorization, NegativeInputError,
                    NotInvariantError, NotPositiveError, PositiveLtiSystem,
                    Tolerances, equivalent, find_nonneg_factorization,
                    left_inverse, markov, observability_matrix, project, rank,
                    reachability_matrix, reachable_subspace, reduce, simulate)
from posred import GeneratorSpec, ZeroMatrixError, generate_system, is_nonneg
from conftest import cascade_system, swap_system

TOL = Tolerances()


class TestConstruction:
    def test_negative_entry_rejected(self):
        with pytest.raises(NotPositiveError, match="not positive"):
            PositiveLtiSystem([[1.0, -0.5], [0.0, 1.0]], [[1.0], [0.0]])

    def test_default_output_is_identity(self):
        S = PositiveLtiSystem(np.eye(2), np.ones((2, 1)))
        np.testing.assert_allclose(S.C, np.eye(2))
        assert S.num_outputs == 2

    def test_dimension_checks(self):
        with pytest.raises(DimensionMismatchError):
            PositiveLtiSystem(np.ones((2, 3)), np.ones((2, 1)))
        with pytest.raises(DimensionMismatchError):
            PositiveLtiSystem(np.eye(2), np.ones((3, 1)))
        with pytest.raises(DimensionMismatchError):
            PositiveLtiSystem(np.eye(2), np.ones((2, 1)), np.ones((1, 3)))

    def test_time_domain_tag(self):
        S = PositiveLtiSystem(np.eye(2), np.ones((2, 1)), time_domain="continuous")
        assert S.time_domain == "continuous"
        with pytest.raises(ValueError):
            PositiveLtiSystem(np.eye(2), np.ones((2, 1)), time_domain="hybrid")

    def test_matrices_frozen(self):
        S = PositiveLtiSystem(np.eye(2), np.ones((2, 1)))
        with pytest.raises(ValueError):
            S.A[0, 0] = 5.0

    def test_transpose_swaps_maps(self):
        S = cascade_system(C=np.ones((1, 4)))
        T = S.transpose()
        np.testing.assert_allclose(T.A, S.A.T)
        np.testing.assert_allclose(T.B, S.C.T)
        np.testing.assert_allclose(T.C, S.B.T)


class TestReachability:
    def test_cascade_blocks(self):
        # First row obeys r[k+1] = r[k] + s[k] with s the second row
        # (A rows (1,1,0,0) and (1,0,2,0) acting on span{e1, e2}),
        # giving 1, 2, 3, 5; the tail rows stay zero.
        S = cascade_system()
        R = reachability_matrix(S)
        np.testing.assert_allclose(R, [[1.0, 2.0, 3.0, 5.0],
                                       [1.0, 1.0, 2.0, 3.0],
                                       [0.0, 0.0, 0.0, 0.0],
                                       [0.0, 0.0, 0.0, 0.0]], atol=1e-12)
        for k in range(3):
            np.testing.assert_allclose(R[:, k + 1], S.A @ R[:, k])

    def test_swap_blocks_eps2(self):
        R = reachability_matrix(swap_system(2.0))
        np.testing.assert_allclose(R, [[0.0, 2.0, 0.0, 8.0],
                                       [1.0, 0.0, 4.0, 0.0],
                                       [1.0, 1.0, 1.0, 1.0],
                                       [1.0, 1.0, 1.0, 1.0]])

    def test_identity_dynamics(self):
        S = PositiveLtiSystem(np.eye(2), np.array([[1.0], [0.0]]))
        np.testing.assert_allclose(reachability_matrix(S), [[1.0, 1.0], [0.0, 0.0]])


class TestReachableSubspace:
    def test_cascade_basis(self):
        basis = reachable_subspace(cascade_system())
        np.testing.assert_allclose(basis.basis, [[1.0, 2.0], [1.0, 1.0],
                                                 [0.0, 0.0], [0.0, 0.0]])

    def test_swap_dimensions(self):
        assert reachable_subspace(swap_system(1.0)).dimension == 2
        assert reachable_subspace(swap_system(2.0)).dimension == 3

    def test_zero_input_map(self):
        S = PositiveLtiSystem(np.eye(3), np.zeros((3, 1)))
        with pytest.raises(ZeroMatrixError):
            reachable_subspace(S)

    def test_invariance_and_positivity(self):
        rng = np.random.default_rng(31)
        for seed in range(20):
            spec = GeneratorSpec(n=int(rng.integers(2, 7)), inputs=2,
                                 reachable_dim=None, density=0.7, seed=seed)
            S = generate_system(spec)
            try:
                basis = reachable_subspace(S)
            except ZeroMatrixError:
                continue
            q = basis.dimension
            assert rank(np.hstack([basis.basis, S.A @ basis.basis])) == q
            assert rank(np.hstack([basis.basis, S.B])) == q
            assert is_nonneg(basis.basis)


class TestObservability:
    def test_identity_output_stacks_powers(self):
        S = swap_system(1.0)
        O = observability_matrix(S)
        np.testing.assert_allclose(O[:4], np.eye(4))
        np.testing.assert_allclose(O[4:8], S.A)

    def test_sum_output_on_identity_dynamics(self):
        S = PositiveLtiSystem(np.eye(2), np.ones((2, 1)), np.ones((1, 2)))
        np.testing.assert_allclose(observability_matrix(S), np.ones((2, 2)))

    def test_duality_with_reachability(self):
        for seed in range(10):
            S = generate_system(GeneratorSpec(n=4, inputs=2, outputs=3, seed=seed))
            np.testing.assert_allclose(observability_matrix(S),
                                       reachability_matrix(S.transpose()).T)


class TestMarkov:
    def test_first_coefficient(self):
        S = cascade_system(C=np.array([[1.0, 0.0, 0.0, 0.0]]))
        seq = markov(S, 0)
        assert seq.horizon == 0
        np.testing.assert_allclose(seq.coefficients[0], [[1.0]])

    def test_nilpotent_vanishes(self):
        A = np.array([[0.0, 1.0], [0.0, 0.0]])
        S = PositiveLtiSystem(A, np.eye(2))
        seq = markov(S, 5)
        for k in range(2, 6):
            np.testing.assert_allclose(seq.coefficients[k], np.zeros((2, 2)))

    def test_reduction_preserves_sequence(self):
        C = np.array([[0.0, 0.0, 1.0, 0.0]])
        S = swap_system(1.0, C=C)
        # Hand realization of the same impulse response: the reachable
        # block alternates the two leading states.
        reduced = PositiveLtiSystem([[0.0, 1.0], [1.0, 0.0]], [[0.0], [1.0]],
                                    [[1.0, 1.0]])
        full = markov(S, 6).coefficients
        small = markov(reduced, 6).coefficients
        for M1, M2 in zip(full, small):
            np.testing.assert_allclose(M1, M2, atol=1e-12)


class TestReduce:
    def naive_pair(self):
        basis = reachable_subspace(cascade_system()).basis
        return Factorization(np.asarray(basis), left_inverse(basis), [])

    def test_mixed_sign_pair_still_positive_unperturbed(self):
        S = cascade_system()
        reduced = reduce(S, self.naive_pair())
        np.testing.assert_allclose(reduced.A, [[0.0, 1.0], [1.0, 1.0]], atol=1e-12)
        np.testing.assert_allclose(reduced.B, [[1.0], [0.0]], atol=1e-12)

    def test_mixed_sign_pair_breaks_under_perturbation(self):
        S = cascade_system(0.1)
        F = self.naive_pair()
        Ar, Br, _ = project(S, F.J, F.Jdag)
        np.testing.assert_allclose(Ar, [[-0.1, 0.9], [1.1, 1.1]], atol=1e-12)
        np.testing.assert_allclose(Br, [[1.2], [-0.1]], atol=1e-12)
        with pytest.raises(NotPositiveError):
            reduce(S, F)

    def test_nonneg_pair_is_robust(self):
        F = find_nonneg_factorization(reachable_subspace(cascade_system()))
        r0 = reduce(cascade_system(), F)
        np.testing.assert_allclose(r0.A, [[1.0, 1.0], [1.0, 0.0]], atol=1e-12)
        np.testing.assert_allclose(r0.B, [[1.0], [1.0]], atol=1e-12)
        r1 = reduce(cascade_system(0.1), F)
        np.testing.assert_allclose(r1.A, [[1.0, 1.1], [1.0, 0.0]], atol=1e-12)
        np.testing.assert_allclose(r1.B, [[1.0], [1.1]], atol=1e-12)

    def test_non_invariant_image_rejected(self):
        S = cascade_system()
        F = Factorization(np.eye(4)[:, :1], np.eye(4)[:1, :], [0])
        with pytest.raises(NotInvariantError):
            reduce(S, F)

    def test_shape_mismatch(self):
        S = cascade_system()
        F = Factorization(np.eye(3)[:, :1], np.eye(3)[:1, :], [0])
        with pytest.raises(DimensionMismatchError):
            reduce(S, F)


class TestEquivalent:
    def test_self(self):
        S = swap_system(1.0)
        assert equivalent(S, S)

    def test_reduction_is_equivalent(self):
        C = np.array([[0.0, 0.0, 1.0, 0.0]])
        S = swap_system(1.0, C=C)
        F = find_nonneg_factorization(reachable_subspace(S))
        reduced = reduce(S, F)
        assert equivalent(S, reduced)

    def test_detects_difference(self):
        S1 = PositiveLtiSystem(np.eye(2), np.ones((2, 1)), np.ones((1, 2)))
        S2 = PositiveLtiSystem(np.eye(2) * 1.1, np.ones((2, 1)), np.ones((1, 2)))
        assert not equivalent(S1, S2)

    def test_dimension_mismatch(self):
        S1 = PositiveLtiSystem(np.eye(2), np.ones((2, 1)))
        S2 = PositiveLtiSystem(np.eye(2), np.ones((2, 2)))
        with pytest.raises(DimensionMismatchError):
            equivalent(S1, S2)


class TestSimulate:
    def test_zero_everything(self):
        S = swap_system(1.0)
        outputs = simulate(S, np.zeros(4), [np.zeros(1)] * 5)
        assert len(outputs) == 6
        for y in outputs:
            np.testing.assert_allclose(y, np.zeros(4))

    def test_impulse_reproduces_markov(self):
        for seed in range(6):
            S = generate_system(GeneratorSpec(n=4, inputs=2, outputs=3,
                                              density=0.8, seed=seed))
            seq = markov(S, 5).coefficients
            for j in range(S.num_inputs):
                impulse = [np.eye(S.num_inputs)[j]] + [np.zeros(S.num_inputs)] * 5
                outputs = simulate(S, np.zeros(S.dim), impulse)
                for k in range(6):
                    np.testing.assert_allclose(outputs[k + 1], seq[k][:, j],
                                               atol=TOL.eq_tol)

    def test_trajectories_stay_nonneg(self):
        rng = np.random.default_rng(77)
        S = generate_system(GeneratorSpec(n=5, inputs=2, density=0.6, seed=4))
        inputs = rng.uniform(0.0, 1.0, (20, 2))
        outputs = simulate(S, rng.uniform(0.0, 1.0, 5), list(inputs))
        assert all(y.min() >= -TOL.nonneg_tol for y in outputs)

    def test_rejects_negative_data(self):
        S = swap_system(1.0)
        with pytest.raises(NegativeInputError):
            simulate(S, -np.ones(4), [])
        with pytest.raises(NegativeInputError):
            simulate(S, np.zeros(4), [-np.ones(1)])

    def test_rejects_continuous_tag(self):
        S = PositiveLtiSystem(np.eye(2), np.ones((2, 1)), time_domain="continuous")
        with pytest.raises(ValueError):
            simulate(S, np.zeros(2), [])


def test_exact_reduction_on_planted_systems():
    reduced_count = 0
    for seed in range(25):
        spec = GeneratorSpec(n=6, inputs=1, outputs=2, reachable_dim=3,
                             density=0.8, seed=seed)
        S = generate_system(spec)
        try:
            basis = reachable_subspace(S)
        except ZeroMatrixError:
            continue
        if basis.dimension == S.dim:
            continue
        F = find_nonneg_factorization(basis)
        if F is None:
            continue
        assert equivalent(S, reduce(S, F))
        reduced_count += 1
    assert reduced_count > 5
