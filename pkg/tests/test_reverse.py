import numpy as np
import pytest
from numpy.testing import assert_allclose

from quvar import bounds, matops, reverse, states
from quvar.errors import DegenerateK, ParamError
from quvar.experiments import SPIN1_JX, SPIN1_JY, qutrit_family_state
from quvar.states import PAULI_X, PAULI_Y

MIXED = np.diag([0.75, 0.25]).astype(complex)
MAXMIX = np.eye(2, dtype=complex) / 2


class TestFidelityReverse:
    def test_maximally_mixed_anchor(self):
        rep = reverse.fidelity_reverse_bound(MAXMIX, PAULI_X, PAULI_Y)
        assert rep.lam == pytest.approx(4.0)
        assert rep.diagnostics["fidelity_sq"] == pytest.approx(0.5, abs=1e-10)
        assert rep.bound_value == pytest.approx(2.0, abs=1e-9)
        assert rep.target == pytest.approx(2.0)
        # sigma_K is a pure projector (onto one sigma_z eigenstate)
        assert_allclose(np.linalg.eigvalsh(rep.sigma_k), [0.0, 1.0], atol=1e-12)

    def test_polarized_anchor_tight(self):
        rep = reverse.fidelity_reverse_bound(MIXED, PAULI_X, PAULI_Y)
        assert rep.lam == pytest.approx(4.0)
        assert_allclose(rep.sigma_k, np.diag([0.0, 1.0]), atol=1e-12)
        assert rep.diagnostics["fidelity_sq"] == pytest.approx(0.25, abs=1e-10)
        assert rep.bound_value == pytest.approx(2.0, abs=1e-9)  # 1 + 4 * 1/4

    def test_family_origin_anchor(self):
        rep = reverse.fidelity_reverse_bound(qutrit_family_state(0.0), SPIN1_JX, SPIN1_JY)
        assert rep.bound_value == pytest.approx(8.0 / 3.0, abs=1e-9)
        assert rep.target == pytest.approx(4.0 / 3.0)

    def test_pure_sigma_k_saturates(self):
        # sigma_K pure makes F^2 = Tr(rho sigma_K), collapsing the bound to
        # the variance sum exactly.
        for rz in (0.1, 0.3, 0.62, 0.9):
            rho = states.qubit_from_bloch([0.0, 0.0, rz])
            rep = reverse.fidelity_reverse_bound(rho, PAULI_X, PAULI_Y)
            assert np.linalg.eigvalsh(rep.sigma_k)[0] == pytest.approx(0.0, abs=1e-12)
            assert rep.bound_value == pytest.approx(rep.target, abs=1e-9)

    def test_above_sum_on_random_instances(self):
        for i in range(300):
            rng = np.random.default_rng([50, i])
            d = 2 + i % 3
            rho = states.random_mixed(d, rng)
            A = states.random_observable(d, rng)
            B = states.random_observable(d, rng)
            rep = reverse.fidelity_reverse_bound(rho, A, B)
            assert rep.bound_value >= rep.target - 1e-8

    def test_degenerate_k_raises(self):
        with pytest.raises(DegenerateK):
            reverse.fidelity_reverse_bound(MIXED, np.eye(2), np.eye(2))

    def test_second_form_counterexample_recorded(self):
        # sigma_K pure while rho is mixed: S(rho||sigma) = inf and the
        # relative-entropy form collapses; the report must flag it.
        rep = reverse.fidelity_reverse_bound(MIXED, PAULI_X, PAULI_Y)
        assert rep.diagnostics["relative_entropy"] == np.inf
        assert rep.diagnostics["second_form_valid"] == 0.0
        assert rep.diagnostics["second_form_value"] == -np.inf


class TestNumericalRadiusFamily:
    def test_ground_state_anchor(self):
        psi = np.array([1.0, 0.0], dtype=complex)
        rep = reverse.numerical_radius_bound(psi, PAULI_X, PAULI_Y)
        # canonical K = diag(0, 4): w = 4, bound = |<[A,B]>| + 4 = 6
        assert rep.diagnostics["radius"] == pytest.approx(4.0)
        assert rep.bound_value == pytest.approx(6.0)
        assert rep.target == pytest.approx(2.0)

    def test_family_above_sum_random_qutrits(self):
        for i in range(100):
            psi = states.random_pure(3, np.random.default_rng([51, i]))
            for rep in (
                reverse.numerical_radius_bound(psi, SPIN1_JX, SPIN1_JY),
                reverse.berger_bound(psi, SPIN1_JX, SPIN1_JY),
                reverse.kittaneh_bound(psi, SPIN1_JX, SPIN1_JY),
                reverse.elhaddad_kittaneh_bound(psi, SPIN1_JX, SPIN1_JY, 0.5, 1.0),
            ):
                assert rep.bound_value >= rep.target - 1e-8

    def test_berger_equals_numerical_radius_for_hermitian_k(self):
        # w(sqrt(K))^2 = lambda_max(K) = w(K) when K is Hermitian PSD.
        psi = np.array([1.0, 0.0], dtype=complex)
        b = reverse.berger_bound(psi, PAULI_X, PAULI_Y)
        n = reverse.numerical_radius_bound(psi, PAULI_X, PAULI_Y)
        assert b.bound_value == pytest.approx(n.bound_value, abs=1e-9)
        assert b.bound_value == pytest.approx(2.0 + 4.0)
        for i in range(20):
            rng = np.random.default_rng([52, i])
            psi = states.random_pure(3, rng)
            A = states.random_observable(3, rng)
            B = states.random_observable(3, rng)
            bb = reverse.berger_bound(psi, A, B)
            nn = reverse.numerical_radius_bound(psi, A, B)
            assert bb.bound_value == pytest.approx(nn.bound_value, rel=1e-9)

    def test_kittaneh_reduces_to_largest_eigenvalue(self):
        psi = np.array([1.0, 0.0], dtype=complex)
        rep = reverse.kittaneh_bound(psi, PAULI_X, PAULI_Y)
        # K = diag(0, 4): (||sqrt(K)|| + sqrt(||K||))^2 / 4 = (2+2)^2/4 = 4
        assert rep.bound_value == pytest.approx(2.0 + 4.0)
        for i in range(20):
            rng = np.random.default_rng([53, i])
            psi = states.random_pure(3, rng)
            A = states.random_observable(3, rng)
            B = states.random_observable(3, rng)
            rep = reverse.kittaneh_bound(psi, A, B)
            K = bounds.canonical_uncertainty_matrix(states.projector(psi), A, B)
            lmax = np.linalg.eigvalsh(K.matrix)[-1]
            assert rep.bound_value - rep.diagnostics["commutator"] == pytest.approx(
                lmax, rel=1e-9
            )

    def test_elhaddad_kittaneh_examples_and_reduction(self):
        psi = np.array([1.0, 0.0], dtype=complex)
        r1 = reverse.elhaddad_kittaneh_bound(psi, PAULI_X, PAULI_Y, 0.5, 1.0)
        assert r1.bound_value == pytest.approx(2.0 + 4.0)
        r2 = reverse.elhaddad_kittaneh_bound(psi, PAULI_X, PAULI_Y, 0.5, 2.0)
        assert r2.bound_value == pytest.approx(2.0 + 4.0)  # ||diag(0,16)||^(1/2)
        for alpha, r in ((0.3, 1.0), (0.7, 1.5), (0.5, 3.0)):
            rng = np.random.default_rng(int(10 * alpha + r))
            psi = states.random_pure(3, rng)
            A = states.random_observable(3, rng)
            B = states.random_observable(3, rng)
            rep = reverse.elhaddad_kittaneh_bound(psi, A, B, alpha, r)
            K = bounds.canonical_uncertainty_matrix(states.projector(psi), A, B)
            lmax = np.linalg.eigvalsh(K.matrix)[-1]
            assert rep.diagnostics["term"] == pytest.approx(lmax, rel=1e-9)

    def test_parameter_guards(self):
        psi = states.random_pure(2, 1)
        with pytest.raises(ParamError):
            reverse.elhaddad_kittaneh_bound(psi, PAULI_X, PAULI_Y, 0.0, 1.0)
        with pytest.raises(ParamError):
            reverse.elhaddad_kittaneh_bound(psi, PAULI_X, PAULI_Y, 1.0, 1.0)
        with pytest.raises(ParamError):
            reverse.elhaddad_kittaneh_bound(psi, PAULI_X, PAULI_Y, 0.5, 0.5)

    def test_family_coincides_for_hermitian_k(self):
        # every member reduces to |<[A,B]>| + lambda_max(K) on pure states
        for i in range(10):
            rng = np.random.default_rng([54, i])
            psi = states.random_pure(3, rng)
            A = states.random_observable(3, rng)
            B = states.random_observable(3, rng)
            vals = [
                reverse.numerical_radius_bound(psi, A, B).bound_value,
                reverse.berger_bound(psi, A, B).bound_value,
                reverse.kittaneh_bound(psi, A, B).bound_value,
                reverse.elhaddad_kittaneh_bound(psi, A, B, 0.5, 1.0).bound_value,
            ]
            assert max(vals) - min(vals) < 1e-9 * max(1.0, max(vals))

    def test_zero_variance_on_eigenstate(self):
        # basis state with commuting diagonal observables: variances vanish,
        # the bound stays a valid (weak) upper limit on zero
        psi = np.array([1.0, 0.0], dtype=complex)
        A = np.diag([1.0, -1.0]).astype(complex)
        B = np.diag([0.5, 2.0]).astype(complex)
        rep = reverse.numerical_radius_bound(psi, A, B)
        assert rep.target == pytest.approx(0.0, abs=1e-12)
        assert rep.bound_value >= 0.0

    def test_constant_observables_collapse_k(self):
        psi = np.array([1.0, 0.0], dtype=complex)
        rep = reverse.numerical_radius_bound(psi, np.eye(2), 2.0 * np.eye(2))
        assert rep.bound_value == pytest.approx(0.0, abs=1e-12)
        assert rep.sigma_k is None
