import numpy as np
import pytest

from quvar import bounds, multiobs, states
from quvar.errors import QuvarError
from quvar.experiments import SPIN1_JX, SPIN1_JY, SPIN1_JZ


def random_setup(dim, key):
    rng = np.random.default_rng(key)
    psi = states.random_pure(dim, rng)
    A, B, C = (states.random_observable(dim, rng) for _ in range(3))
    return psi, A, B, C


class TestHexagonVectors:
    def test_sign_choice_gives_commutator_reduced_norms(self):
        for key in range(30):
            psi, A, B, C = random_setup(3 + key % 2, key)
            hv = multiobs.hexagon_vectors(psi, A, B, C)
            rho = states.projector(psi)
            for v, (X, Y) in (
                (hv.psi1, (A, B)),
                (hv.psi2, (B, C)),
                (hv.psi3, (A, C)),
            ):
                expected = (
                    bounds.variance(rho, X)
                    + bounds.variance(rho, Y)
                    - bounds.commutator_expect(rho, X, Y)
                )
                assert float(np.vdot(v, v).real) == pytest.approx(expected, abs=1e-10)
            assert hv.k1 in (-1, 1) and hv.k2 in (-1, 1) and hv.k3 in (-1, 1)


class TestPairwiseSumBound:
    def test_spin_one_triple(self):
        psi = states.random_pure(3, 70)
        rep = multiobs.pairwise_sum_bound(psi, SPIN1_JX, SPIN1_JY, SPIN1_JZ)
        assert rep.bound_value <= rep.target + 1e-8

    def test_commuting_diagonals_use_strengthening_terms(self):
        psi = states.random_pure(3, 71)
        A = np.diag([1.0, 0.0, -1.0]).astype(complex)
        B = np.diag([0.5, 2.0, 1.0]).astype(complex)
        C = np.diag([-1.0, 1.0, 0.0]).astype(complex)
        rep = multiobs.pairwise_sum_bound(psi, A, B, C)
        rho = states.projector(psi)
        assert all(
            bounds.commutator_expect(rho, X, Y) < 1e-12
            for X, Y in ((A, B), (B, C), (A, C))
        )
        assert rep.bound_value > 0.0  # carried entirely by projection terms
        assert rep.bound_value <= rep.target + 1e-8

    def test_eigenstate_of_first_observable(self):
        A = np.diag([2.0, 1.0, -1.0]).astype(complex)
        psi = np.array([1.0, 0.0, 0.0], dtype=complex)  # Var(A) = 0
        B = states.random_observable(3, 72)
        C = states.random_observable(3, 73)
        rep = multiobs.pairwise_sum_bound(psi, A, B, C)
        assert rep.bound_value <= rep.target + 1e-8

    def test_saturates_with_optimal_terms(self):
        psi, A, B, C = random_setup(3, 74)
        rep = multiobs.pairwise_sum_bound(psi, A, B, C)
        assert rep.bound_value == pytest.approx(rep.target, abs=1e-9)


class TestHexagonIdentities:
    def test_degenerate_configuration_residuals(self):
        e = np.array([1.0, 0.0, 0.0])
        # all sides equal: variant 1 misses by ||e||^2/4, variant 2 by 1/3
        assert multiobs.hexagon_chord_residual(e, e, e, 1) == pytest.approx(0.25)
        assert multiobs.hexagon_chord_residual(e, e, e, 2) == pytest.approx(1.0 / 3.0)

    def test_regular_hexagon_satisfies_both(self):
        u0 = np.array([1.0, 0.0])
        u1 = np.array([0.5, np.sqrt(3) / 2])
        u2 = np.array([-0.5, np.sqrt(3) / 2])
        assert multiobs.hexagon_chord_residual(u0, u1, u2, 1) == pytest.approx(0.0, abs=1e-12)
        assert multiobs.hexagon_chord_residual(u0, u1, u2, 2) == pytest.approx(0.0, abs=1e-12)

    def test_variant_guard(self):
        e = np.array([1.0])
        with pytest.raises(QuvarError):
            multiobs.hexagon_chord_residual(e, e, e, 3)

    def test_state_level_residuals_are_finite_and_logged(self):
        psi, A, B, C = random_setup(3, 75)
        r1 = multiobs.hexagon_identity_check(psi, A, B, C, 1)
        r2 = multiobs.hexagon_identity_check(psi, A, B, C, 2)
        assert np.isfinite(r1) and np.isfinite(r2)
        assert r1 >= 0 and r2 >= 0


class TestSideNormDecomposition:
    def test_direct_algebra_value(self):
        for key in range(20):
            psi, A, B, C = random_setup(3 + key % 2, 100 + key)
            dec = multiobs.side_norm_decomposition(psi, A, B, C)
            assert dec.residual_direct < 1e-10

    def test_printed_decompositions_disagree_generically(self):
        psi, A, B, C = random_setup(3, 120)
        dec = multiobs.side_norm_decomposition(psi, A, B, C)
        # norm sum = 2*var_sum - comms, so both printed forms miss by
        # var_sum and var_sum - comms/2 respectively
        assert dec.residual_full > 1e-6
        assert dec.residual_half > 1e-6

    def test_commuting_case_structure(self):
        psi = states.random_pure(3, 121)
        A = np.diag([1.0, 0.0, -1.0]).astype(complex)
        B = np.diag([0.5, 2.0, 1.0]).astype(complex)
        C = np.diag([-1.0, 1.0, 0.0]).astype(complex)
        dec = multiobs.side_norm_decomposition(psi, A, B, C)
        rho = states.projector(psi)
        var3 = sum(bounds.variance(rho, M) for M in (A, B, C))
        # with vanishing commutators the differences are variance multiples
        assert dec.norm_sum == pytest.approx(2 * var3, abs=1e-10)
        assert dec.norm_sum - dec.decomp_full_comm == pytest.approx(var3, abs=1e-10)
