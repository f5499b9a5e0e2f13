"""Fidelity-witness measurement scheme for qubits.

Given a qubit state rho (Bloch vector r), a target state sigma (Bloch
vector s), and a measurable direction m, find a partner observable
B = lam * (n . sigma_vec) such that the normalized uncertainty matrix
K(rho, m.sigma_vec, B) / Tr(K) equals sigma. Measuring the two variances
and the commutator expectation then yields

    F(rho, sigma)^2 >= (Var(A) + Var(B) - |<[A,B]>|) / Tr(K)

from the reverse fidelity bound, without tomography of sigma.

With the positive sign convention the Bloch vector of K/Tr(K) is

    R(lam, n) = 2 [ lam (m x n) - p1 m - lam^2 p2 n ]
                / (1 + p1^2 + lam^2 (1 + p2^2)),

p1 = r.m, p2 = r.n. The solver finds (lam, n) with R = s by multistart
least squares; every accepted solution is re-verified against the directly
constructed matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from . import states
from .bounds import (
    canonical_uncertainty_matrix,
    commutator_expect,
    uncertainty_matrix,
    variance,
)
from .errors import NoSolution, QuvarError

#: Euclidean Bloch residual at or below this accepts a candidate solution.
RESIDUAL_TOL = 1e-6


@dataclass(frozen=True)
class ProtocolSolution:
    """Accepted partner observable B = lam * (n_hat . sigma_vec)."""

    lam: float
    n_hat: np.ndarray
    residual: float
    matched_sign: int
    bloch_achieved: np.ndarray


def partner_bloch(lam: float, n_hat: np.ndarray, r: np.ndarray, m_hat: np.ndarray) -> np.ndarray:
    """Bloch vector of K/Tr(K) for A = m.sigma, B = lam n.sigma (sign +1)."""
    p1 = float(np.dot(r, m_hat))
    p2 = float(np.dot(r, n_hat))
    num = 2.0 * (lam * np.cross(m_hat, n_hat) - p1 * m_hat - lam * lam * p2 * n_hat)
    den = 1.0 + p1 * p1 + lam * lam * (1.0 + p2 * p2)
    return num / den


def _spherical(theta: float, phi: float) -> np.ndarray:
    st = np.sin(theta)
    return np.array([st * np.cos(phi), st * np.sin(phi), np.cos(theta)])


def _observables(lam: float, n_hat: np.ndarray, m_hat: np.ndarray):
    A = sum(c * P for c, P in zip(m_hat, states.PAULIS))
    B = lam * sum(c * P for c, P in zip(n_hat, states.PAULIS))
    return A, B


def construct_partner_observable(
    r: np.ndarray,
    s: np.ndarray,
    m_hat: np.ndarray,
    starts: int = 32,
    seed=0,
    residual_tol: float = RESIDUAL_TOL,
) -> ProtocolSolution:
    """Solve for (lam, n_hat) with bloch(K/Tr K) = s by multistart root
    finding over (log lam, polar angles of n_hat).

    Raises NoSolution when no start reaches the residual tolerance; whether
    a solution exists at all for a given (r, s, m) is an empirical matter,
    so callers auditing families should catch and count. Accepted solutions
    are re-verified against the directly constructed uncertainty matrix for
    both sign conventions, and the matching sign is reported.
    """
    if starts < 1:
        raise QuvarError(f"starts must be >= 1, got {starts}")
    r = np.asarray(r, dtype=float)
    s = np.asarray(s, dtype=float)
    m_hat = np.asarray(m_hat, dtype=float)
    if np.linalg.norm(r) > 1.0 + 1e-9 or np.linalg.norm(s) > 1.0 + 1e-9:
        raise QuvarError("Bloch vectors must have length at most 1")
    if abs(np.linalg.norm(m_hat) - 1.0) > 1e-9:
        raise QuvarError("m_hat must be a unit vector")

    def residual_vec(x):
        lam = np.exp(x[0])
        n = _spherical(x[1], x[2])
        return partner_bloch(lam, n, r, m_hat) - s

    rng = np.random.default_rng(seed)
    best = None
    lo = np.array([-8.0, -4.0 * np.pi, -4.0 * np.pi])
    hi = np.array([8.0, 4.0 * np.pi, 4.0 * np.pi])
    for k in range(starts):
        x0 = np.array([
            rng.uniform(-2.0, 1.5),
            np.arccos(rng.uniform(-1.0, 1.0)),
            rng.uniform(0.0, 2.0 * np.pi),
        ])
        sol = least_squares(
            residual_vec, x0, method="trf", bounds=(lo, hi),
            xtol=1e-15, ftol=1e-15, max_nfev=300,
        )
        res = float(np.linalg.norm(sol.fun))
        if best is None or res < best[0]:
            best = (res, sol.x)
        if res < 1e-12:
            break
    res, x = best
    if res >= residual_tol:
        raise NoSolution(f"best residual {res:.3e} after {starts} starts")

    lam = float(np.exp(x[0]))
    n_hat = _spherical(x[1], x[2])
    achieved = partner_bloch(lam, n_hat, r, m_hat)

    # A-posteriori: the explicitly built K must normalize to the target.
    rho = states.qubit_from_bloch(r)
    sigma = states.qubit_from_bloch(s)
    A, B = _observables(lam, n_hat, m_hat)
    matched_sign = 0
    for sign in (+1, -1):
        K = uncertainty_matrix(rho, A, B, sign)
        if np.linalg.norm(K / np.trace(K).real - sigma) < max(residual_tol, 10 * res):
            matched_sign = sign
            break
    if matched_sign == 0:
        raise NoSolution(
            f"Bloch residual {res:.3e} accepted but no sign convention "
            "reproduces the target matrix"
        )
    return ProtocolSolution(
        lam=lam,
        n_hat=n_hat,
        residual=res,
        matched_sign=matched_sign,
        bloch_achieved=achieved,
    )


def analytic_orthogonal_solution(s: np.ndarray, m_hat: np.ndarray) -> tuple[float, np.ndarray]:
    """Closed-form (lam, n_hat) for the maximally mixed state, s ⊥ m.

    With r = 0 the Bloch equation reduces to s = 2 lam (m x n) / (1+lam^2);
    choosing n = s_hat x m makes m x n = s_hat, and the scale solves
    2 lam / (1 + lam^2) = |s|, i.e. lam = (1 - sqrt(1 - |s|^2)) / |s|.
    """
    s = np.asarray(s, dtype=float)
    m_hat = np.asarray(m_hat, dtype=float)
    sn = float(np.linalg.norm(s))
    if sn < 1e-12:
        raise QuvarError("target s = 0 is degenerate: lam = 0 carries no signal")
    if abs(np.dot(s, m_hat)) > 1e-9 * max(sn, 1.0):
        raise QuvarError("closed form needs s orthogonal to m_hat")
    n_hat = np.cross(s / sn, m_hat)
    n_hat = n_hat / np.linalg.norm(n_hat)
    lam = (1.0 - np.sqrt(max(1.0 - sn * sn, 0.0))) / sn
    return float(lam), n_hat


@dataclass(frozen=True)
class FidelityWitness:
    """Emitted fidelity lower bound plus the exact value for auditing."""

    bound: float
    true_fidelity_sq: float
    lam_k: float
    variance_sum: float
    commutator: float


def fidelity_lower_bound(rho: np.ndarray, A: np.ndarray, solution: ProtocolSolution) -> FidelityWitness:
    """Bound F(rho, K/Tr K)^2 >= (Var(A)+Var(B) - |<[A,B]>|) / Tr(K).

    The numerator equals Tr(rho K) for the canonical sign, which is at most
    Tr(rho sigma_K) <= F^2; only the two variances, the commutator
    expectation and Tr(K) enter, all measurable without tomography.
    """
    rho = states.check_density_matrix(rho)
    n = solution.n_hat
    B = solution.lam * sum(c * P for c, P in zip(n, states.PAULIS))
    var_sum = variance(rho, A) + variance(rho, B)
    comm = commutator_expect(rho, A, B)
    K = canonical_uncertainty_matrix(rho, A, B)
    bound = (var_sum - comm) / K.trace
    sigma_target = uncertainty_matrix(rho, A, B, solution.matched_sign)
    sigma_target = sigma_target / np.trace(sigma_target).real
    f = states.fidelity(rho, sigma_target)
    return FidelityWitness(
        bound=float(bound),
        true_fidelity_sq=float(f * f),
        lam_k=K.trace,
        variance_sum=var_sum,
        commutator=comm,
    )
