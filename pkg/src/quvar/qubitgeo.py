"""Qubit closed forms: purity of the normalized uncertainty matrix, and the
claimed concurrence-coherence-purity identity for vectorized qubit states.

For A = n1.sigma, B = n2.sigma on a qubit with Bloch vector r, the
positive-convention uncertainty matrix is

    K = (2 + p1^2 + p2^2) I + 2 [ (n1 x n2) - p1 n1 - p2 n2 ] . sigma,

with p_i = r.n_i, so K/Tr(K) is itself a qubit state whose Bloch length has
the closed form sqrt(alpha*beta - gamma^2) / ((alpha+beta)/2) with
alpha = 1 + p1^2, beta = 1 + p2^2, gamma = p1 p2 - n1.n2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import states
from .bounds import uncertainty_matrix
from .errors import QuvarError, RealStateRequired

#: Tolerance for the closed-form vs direct-matrix cross check.
CROSS_CHECK_TOL = 1e-10


def _unit(v: np.ndarray, name: str) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise QuvarError(f"{name} must be a 3-vector, got shape {v.shape}")
    n = np.linalg.norm(v)
    if abs(n - 1.0) > 1e-9:
        raise QuvarError(f"{name} must be a unit vector, |{name}| = {n}")
    return v / n


@dataclass(frozen=True)
class PurityRecord:
    """Bloch length of K/Tr(K) for one (state, direction pair) triple.

    ``angle`` is the angle between the two observable directions;
    ``bloch_radius`` the closed-form |R| of the normalized uncertainty
    matrix; ``approx`` the highly-mixed-state leading-order value
    sqrt(1 - (n1.n2)^2).
    """

    angle: float
    bloch_radius: float
    approx: float


def bloch_radius_closed_form(r: np.ndarray, n1: np.ndarray, n2: np.ndarray) -> float:
    """sqrt(alpha*beta - gamma^2) / ((alpha + beta)/2), sign-independent."""
    p1 = float(np.dot(r, n1))
    p2 = float(np.dot(r, n2))
    alpha = 1.0 + p1 * p1
    beta = 1.0 + p2 * p2
    gamma = p1 * p2 - float(np.dot(n1, n2))
    disc = max(alpha * beta - gamma * gamma, 0.0)
    return float(np.sqrt(disc) / (0.5 * (alpha + beta)))


def normalized_uncertainty_bloch(r: np.ndarray, n1: np.ndarray, n2: np.ndarray) -> PurityRecord:
    """Bloch radius of K/Tr(K), cross-validated against the direct matrix.

    Evaluates both the closed form above and the Bloch length of the
    explicitly constructed K/Tr(K); a disagreement beyond 1e-10 raises,
    since it would mean the closed form and the matrix algebra diverged.
    """
    r = np.asarray(r, dtype=float)
    n1 = _unit(n1, "n1")
    n2 = _unit(n2, "n2")
    closed = bloch_radius_closed_form(r, n1, n2)

    rho = states.qubit_from_bloch(r)
    A = sum(c * P for c, P in zip(n1, states.PAULIS))
    B = sum(c * P for c, P in zip(n2, states.PAULIS))
    K = uncertainty_matrix(rho, A, B, +1)
    sigma = K / np.trace(K).real
    direct = float(np.linalg.norm(states.bloch_from_qubit(sigma)))
    if abs(closed - direct) > CROSS_CHECK_TOL:
        raise QuvarError(
            f"closed-form |R| {closed!r} disagrees with direct matrix value {direct!r}"
        )
    angle = float(np.arccos(np.clip(np.dot(n1, n2), -1.0, 1.0)))
    return PurityRecord(angle=angle, bloch_radius=closed, approx=almost_pure_approx(n1, n2))


def almost_pure_approx(n1: np.ndarray, n2: np.ndarray) -> float:
    """Leading-order Bloch radius sqrt(1 - (n1.n2)^2) for highly mixed r."""
    n1 = _unit(n1, "n1")
    n2 = _unit(n2, "n2")
    dot = float(np.clip(np.dot(n1, n2), -1.0, 1.0))
    return float(np.sqrt(max(1.0 - dot * dot, 0.0)))


# ---------------------------------------------------------------------------
# Concurrence of the vectorized qubit state
# ---------------------------------------------------------------------------

def vectorized_concurrence(r: np.ndarray) -> float:
    """Concurrence 2|ad - bc| of the normalized vectorization of rho(r).

    The column-stacked qubit state is proportional to
    (1 + r_z, r_x + i r_y, r_x - i r_y, 1 - r_z), so the amplitude product
    collapses to the determinant of rho and the concurrence evaluates to
    (1 - |r|^2) / (1 + |r|^2).
    """
    rho = states.qubit_from_bloch(np.asarray(r, dtype=float))
    v = states.vectorize(rho)
    v = v / np.linalg.norm(v)
    a, b, c, d = v
    return float(2.0 * abs(a * d - b * c))


@dataclass(frozen=True)
class ConcurrenceCheck:
    """Side-by-side of the printed closed-form identity and the directly
    computed concurrence of the vectorized state.

    ``formula`` is |1 + P^2 - 2 C^2| / |1 + P^2 - C^2/2| with P the Bloch
    length and C the l1-coherence in the computational basis. ``direct`` is
    the actual concurrence 2|ad - bc| of the normalized vectorized state.
    ``residual`` is their absolute difference; it does NOT vanish in
    general (the direct value depends on the Bloch length alone), so this
    check is a measurement, not an assertion. ``norm_gap`` reports how far
    the printed normalization constant 2 + r_x^2 - r_y^2 + 2 r_z^2 sits
    from the actual squared norm 2 + 2|r|^2 of the unnormalized vector.
    """

    formula: float
    direct: float
    residual: float
    norm_gap: float


def concurrence_identity_check(r: np.ndarray) -> ConcurrenceCheck:
    """Evaluate the closed-form identity against the direct concurrence.

    Only defined for real qubit states (r_y = 0), where the l1-coherence is
    |r_x| and the printed identity takes its simplified form.
    """
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise QuvarError(f"Bloch vector must have 3 components, got {r.shape}")
    if abs(r[1]) > 1e-10:
        raise RealStateRequired(f"r_y = {r[1]} is not zero; state is not real")
    p_sq = float(np.dot(r, r))
    c_sq = float(r[0] * r[0])  # l1-coherence is |r_x| for real states
    formula = abs(1.0 + p_sq - 2.0 * c_sq) / abs(1.0 + p_sq - 0.5 * c_sq)
    direct = vectorized_concurrence(r)
    norm_actual = 2.0 + 2.0 * p_sq
    norm_printed = 2.0 + r[0] ** 2 - r[1] ** 2 + 2.0 * r[2] ** 2
    return ConcurrenceCheck(
        formula=float(formula),
        direct=direct,
        residual=abs(formula - direct),
        norm_gap=abs(norm_actual - norm_printed),
    )
