import numpy as np
import pytest
from numpy.testing import assert_allclose

from quvar import dynamics, matops, states
from quvar.errors import DimensionError, IntegrationDiverged, QuvarError
from quvar.states import PAULI_X, PAULI_Z


def dephasing(rate=1.0):
    return dynamics.LindbladGenerator(
        hamiltonian=np.zeros((2, 2), dtype=complex),
        jump_ops=(PAULI_Z,),
        rates=(rate,),
    )


def zero_gen(dim=2):
    return dynamics.LindbladGenerator(hamiltonian=np.zeros((dim, dim), dtype=complex))


RHO_X = states.qubit_from_bloch([0.5, 0.0, 0.0])


class TestGenerator:
    def test_rate_sign_guard(self):
        with pytest.raises(QuvarError):
            dynamics.LindbladGenerator(np.zeros((2, 2)), (PAULI_Z,), (-1.0,))

    def test_shape_guard(self):
        with pytest.raises(DimensionError):
            dynamics.LindbladGenerator(np.zeros((2, 2)), (np.zeros((3, 3)),), (1.0,))

    def test_fixed_point_output_vanishes(self):
        rho = np.diag([0.75, 0.25]).astype(complex)
        assert_allclose(dynamics.lindblad_apply(dephasing(), rho), np.zeros((2, 2)), atol=1e-14)

    def test_dephasing_pauli_algebra(self):
        out = dynamics.lindblad_apply(dephasing(0.7), RHO_X)
        assert_allclose(out, -0.7 * 0.5 * PAULI_X, atol=1e-14)

    def test_hamiltonian_only_commutator(self):
        gen = dynamics.LindbladGenerator(hamiltonian=PAULI_X)
        rho = states.random_mixed(2, 1)
        assert_allclose(
            dynamics.lindblad_apply(gen, rho), -1j * (PAULI_X @ rho - rho @ PAULI_X), atol=1e-12
        )

    def test_output_hermitian_traceless(self):
        rng = np.random.default_rng(2)
        gen = dynamics.LindbladGenerator(
            hamiltonian=states.random_observable(3, rng),
            jump_ops=(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)),),
            rates=(0.4,),
        )
        out = dynamics.lindblad_apply(gen, states.random_mixed(3, rng))
        assert matops.hermitian_asymmetry(out) < 1e-10
        assert abs(np.trace(out)) < 1e-10


class TestEvolve:
    def test_dephasing_closed_form_decay(self):
        traj = dynamics.evolve(RHO_X, dephasing(), tau=1.0, dt=0.005)
        rx = states.bloch_from_qubit(traj.states[-1])[0]
        assert abs(rx - 0.5 * np.exp(-2.0)) < 1e-6

    def test_zero_generator_constant(self):
        rho0 = states.random_mixed(2, 3)
        traj = dynamics.evolve(rho0, zero_gen(), tau=1.0, dt=0.005)
        assert np.linalg.norm(traj.states[-1] - rho0) < 1e-12
        assert_allclose(traj.bures, np.zeros_like(traj.bures), atol=1e-5)

    def test_step_halving_convergence(self):
        end_a = dynamics.evolve(RHO_X, dephasing(), 1.0, 0.01).states[-1]
        end_b = dynamics.evolve(RHO_X, dephasing(), 1.0, 0.005).states[-1]
        assert np.linalg.norm(end_a - end_b) < 1e-8

    def test_coarse_step_rejected(self):
        with pytest.raises(QuvarError):
            dynamics.evolve(RHO_X, dephasing(), tau=1.0, dt=0.02)

    def test_invariants_preserved_along_trajectory(self):
        rng = np.random.default_rng(4)
        gen = dynamics.LindbladGenerator(
            hamiltonian=states.random_observable(2, rng),
            jump_ops=(np.array([[0, 1], [0, 0]], dtype=complex),),
            rates=(0.5,),
        )
        traj = dynamics.evolve(states.random_mixed(2, rng), gen, tau=2.0, dt=0.01)
        for rho in traj.states[:: len(traj.states) // 20]:
            assert matops.hermitian_asymmetry(rho) < 1e-8
            assert abs(np.trace(rho).real - 1.0) < 1e-8
        assert traj.bures[0] == 0.0

    def test_stiff_rate_diverges(self):
        with pytest.raises(IntegrationDiverged):
            dynamics.evolve(RHO_X, dephasing(rate=500.0), tau=1.0, dt=0.01)


class TestAssumptions:
    def test_dephasing_monotone_negative_sign(self):
        traj = dynamics.evolve(RHO_X, dephasing(), 1.0, 0.005)
        rep = dynamics.qsl_assumption_check(traj, RHO_X)
        assert rep.monotone_bures
        assert rep.generator_sign == -1
        assert not rep.degenerate

    def test_fixed_point_degenerate(self):
        rho0 = np.diag([0.75, 0.25]).astype(complex)
        traj = dynamics.evolve(rho0, dephasing(), 1.0, 0.005)
        rep = dynamics.qsl_assumption_check(traj, rho0)
        assert rep.degenerate
        assert rep.generator_sign == 0

    def test_rabi_oscillation_flagged(self):
        rho0 = states.qubit_from_bloch([0.0, 0.0, 0.8])
        gen = dynamics.LindbladGenerator(hamiltonian=PAULI_X)
        traj = dynamics.evolve(rho0, gen, 3.0, 0.01)
        rep = dynamics.qsl_assumption_check(traj, rho0)
        assert not rep.monotone_bures
        assert not rep.passed


class TestReverseRate:
    def test_zero_generator_entropy_gap(self):
        rho0 = states.random_mixed(2, 5)
        traj = dynamics.evolve(rho0, zero_gen(), 1.0, 0.005)
        expected = states.von_neumann_entropy(rho0) - np.log(2)
        assert dynamics.reverse_rate(traj, rho0, +1) == pytest.approx(expected, abs=1e-12)
        assert dynamics.reverse_rate(traj, rho0, -1) == pytest.approx(expected, abs=1e-12)

    def test_weak_dephasing_series(self):
        # integrand = S - ln 2 - ln cosh(g * rx(t)): the correction is
        # positive and bounded by (g * rx0)^2 / 2
        g = 0.05
        traj = dynamics.evolve(RHO_X, dephasing(g), 1.0, 0.005)
        rate = dynamics.reverse_rate(traj, RHO_X, -1)
        base = states.von_neumann_entropy(RHO_X) - np.log(2)
        assert rate < base
        assert base - rate < (g * 0.5) ** 2 / 2 + 1e-9
        assert rate < 0

    def test_rate_never_exceeds_entropy_gap(self):
        rng = np.random.default_rng(6)
        gen = dynamics.LindbladGenerator(
            hamiltonian=states.random_observable(2, rng),
            jump_ops=(np.array([[0, 1], [0, 0]], dtype=complex), PAULI_Z),
            rates=(0.3, 0.2),
        )
        rho0 = states.random_mixed(2, rng)
        traj = dynamics.evolve(rho0, gen, 1.0, 0.01)
        gap = states.von_neumann_entropy(rho0) - np.log(2)
        for sign in (+1, -1):
            assert dynamics.reverse_rate(traj, rho0, sign) <= gap + 1e-9

    def test_branch_sign_guard(self):
        traj = dynamics.evolve(RHO_X, dephasing(), 1.0, 0.005)
        with pytest.raises(QuvarError):
            dynamics.reverse_rate(traj, RHO_X, 0)


class TestPointwiseCheck:
    def test_dephasing_holds(self):
        traj = dynamics.evolve(RHO_X, dephasing(), 1.0, 0.005)
        rep = dynamics.pointwise_pb_check(traj, RHO_X, -1)
        assert rep.checked
        assert rep.max_violation < 1e-6

    def test_rabi_skipped(self):
        rho0 = states.qubit_from_bloch([0.0, 0.0, 0.8])
        gen = dynamics.LindbladGenerator(hamiltonian=PAULI_X)
        traj = dynamics.evolve(rho0, gen, 3.0, 0.01)
        rep = dynamics.pointwise_pb_check(traj, rho0, +1)
        assert not rep.checked
        assert rep.reason

    def test_fixed_point_degenerate_holds(self):
        rho0 = np.diag([0.75, 0.25]).astype(complex)
        traj = dynamics.evolve(rho0, dephasing(), 1.0, 0.005)
        rep = dynamics.pointwise_pb_check(traj, rho0, +1)
        assert rep.checked
        # 0 >= S(rho0) - ln 2 exactly; no violation
        assert rep.max_violation <= 1e-12


class TestSpeedLimitReport:
    def test_dephasing_vacuous_time_bound(self):
        traj = dynamics.evolve(RHO_X, dephasing(), 1.0, 0.005)
        rep = dynamics.reverse_qsl_report(traj, RHO_X)
        assert rep.assumptions.passed
        assert rep.integrated_holds
        assert rep.rate < 0
        assert not rep.tau_bound_valid
        assert rep.reason == "nonpositive reverse rate"

    def test_amplitude_damping_structure(self):
        gen = dynamics.LindbladGenerator(
            hamiltonian=np.zeros((2, 2), dtype=complex),
            jump_ops=(np.array([[0, 1], [0, 0]], dtype=complex),),
            rates=(0.7,),
        )
        rho0 = states.qubit_from_bloch([0.3, 0.2, -0.4])
        traj = dynamics.evolve(rho0, gen, 1.5, 0.01)
        rep = dynamics.reverse_qsl_report(traj, rho0)
        assert rep.assumptions.passed
        assert rep.integrated_holds
        assert rep.pointwise.checked and rep.pointwise.max_violation < 1e-6

    def test_fixed_point_degenerate_inequality(self):
        rho0 = np.diag([0.75, 0.25]).astype(complex)
        traj = dynamics.evolve(rho0, dephasing(), 1.0, 0.005)
        rep = dynamics.reverse_qsl_report(traj, rho0)
        assert rep.integrated_lhs == pytest.approx(0.0, abs=1e-9)
        assert rep.integrated_holds  # 0 >= tau * (negative rate)
