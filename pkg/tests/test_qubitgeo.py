import numpy as np
import pytest

from quvar import qubitgeo, states
from quvar.errors import QuvarError, RealStateRequired


class TestBlochRadius:
    def test_unpolarized_orthogonal_directions(self):
        rec = qubitgeo.normalized_uncertainty_bloch(
            np.zeros(3), np.array([1.0, 0, 0]), np.array([0, 1.0, 0])
        )
        assert rec.bloch_radius == pytest.approx(1.0)
        assert rec.angle == pytest.approx(np.pi / 2)

    def test_unpolarized_parallel_directions(self):
        n = np.array([0.0, 0.0, 1.0])
        rec = qubitgeo.normalized_uncertainty_bloch(np.zeros(3), n, n)
        assert rec.bloch_radius == pytest.approx(0.0, abs=1e-12)

    def test_closed_form_cross_validates_on_random_triples(self):
        # the constructor itself raises if the closed form and the direct
        # matrix computation disagree beyond 1e-10
        for i in range(500):
            rng = np.random.default_rng([60, i])
            r = states.bloch_from_qubit(states.random_mixed(2, rng))
            n1 = rng.normal(size=3)
            n1 /= np.linalg.norm(n1)
            n2 = rng.normal(size=3)
            n2 /= np.linalg.norm(n2)
            rec = qubitgeo.normalized_uncertainty_bloch(r, n1, n2)
            assert 0.0 <= rec.bloch_radius <= 1.0 + 1e-9

    def test_unit_vector_guard(self):
        with pytest.raises(QuvarError):
            qubitgeo.normalized_uncertainty_bloch(
                np.zeros(3), np.array([2.0, 0, 0]), np.array([0, 1.0, 0])
            )


class TestAlmostPureApprox:
    def test_orthogonal(self):
        assert qubitgeo.almost_pure_approx(
            np.array([1.0, 0, 0]), np.array([0, 1.0, 0])
        ) == pytest.approx(1.0)

    def test_parallel(self):
        n = np.array([1.0, 0, 0])
        assert qubitgeo.almost_pure_approx(n, n) == pytest.approx(0.0)

    def test_deviation_envelope_at_small_radius(self):
        # The leading-order error is |p1 + p2| near collinear directions,
        # so the deviation at |r| = 0.05 is bounded by 2|r| (plus second
        # order), not by 0.01; the sweep checks the true envelope.
        worst = 0.0
        for i in range(500):
            rng = np.random.default_rng([61, i])
            u = rng.normal(size=3)
            u /= np.linalg.norm(u)
            r = 0.05 * u
            n1 = rng.normal(size=3)
            n1 /= np.linalg.norm(n1)
            n2 = rng.normal(size=3)
            n2 /= np.linalg.norm(n2)
            rec = qubitgeo.normalized_uncertainty_bloch(r, n1, n2)
            dev = abs(rec.bloch_radius - rec.approx)
            assert dev <= 2 * 0.05 + 0.01
            worst = max(worst, dev)
        assert worst > 0.0

    def test_collinear_corner_deviation_scale(self):
        n = np.array([0.0, 0.0, 1.0])
        rec = qubitgeo.normalized_uncertainty_bloch(0.05 * n, n, n)
        # exact radius is |p1 + p2| / (1 + ...) ~ 0.0998 while approx is 0
        assert abs(rec.bloch_radius - rec.approx) == pytest.approx(0.0998, abs=1e-3)


class TestConcurrence:
    def test_maximally_mixed(self):
        chk = qubitgeo.concurrence_identity_check(np.zeros(3))
        assert chk.formula == pytest.approx(1.0)
        assert chk.direct == pytest.approx(1.0)
        assert chk.residual < 1e-12

    def test_plus_state(self):
        chk = qubitgeo.concurrence_identity_check(np.array([1.0, 0.0, 0.0]))
        assert chk.formula == pytest.approx(0.0, abs=1e-12)
        assert chk.direct == pytest.approx(0.0, abs=1e-7)

    def test_direct_value_matches_determinant_closed_form(self):
        # concurrence of the normalized vectorized state is
        # (1 - |r|^2) / (1 + |r|^2), a function of the Bloch length alone
        for i in range(500):
            rng = np.random.default_rng([62, i])
            r = states.bloch_from_qubit(states.random_mixed(2, rng))
            r[1] = 0.0
            p_sq = float(r @ r)
            assert qubitgeo.vectorized_concurrence(r) == pytest.approx(
                (1 - p_sq) / (1 + p_sq), abs=1e-10
            )

    def test_printed_identity_is_falsified(self):
        # the closed-form identity disagrees with the actual concurrence on
        # generic real states; the check measures rather than asserts
        chk = qubitgeo.concurrence_identity_check(np.array([0.5, 0.0, 0.0]))
        assert chk.formula == pytest.approx(2.0 / 3.0, abs=1e-12)
        assert chk.direct == pytest.approx(0.6, abs=1e-12)
        assert chk.residual > 0.06

    def test_printed_norm_constant_mismatch_reported(self):
        chk = qubitgeo.concurrence_identity_check(np.array([0.5, 0.0, 0.2]))
        assert chk.norm_gap == pytest.approx(0.25, abs=1e-12)  # r_x^2 gap

    def test_imaginary_state_rejected(self):
        with pytest.raises(RealStateRequired):
            qubitgeo.concurrence_identity_check(np.array([0.1, 0.2, 0.3]))
