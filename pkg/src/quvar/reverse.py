"""Reverse (upper) bounds on Var(A) + Var(B).

The fidelity form holds for arbitrary states; the numerical-radius family
is derived for pure states, where Var(A)+Var(B) - |<[A,B]>| = <psi|K|psi>
is controlled by spectral functionals of K. Mixed-state use of the latter
goes through the same vectorization lift as the forward bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import matops, states
from .bounds import (
    canonical_uncertainty_matrix,
    commutator_expect,
    variance_sum,
)
from .errors import DegenerateK, ParamError

#: Trace of K at or below this is degenerate (both observables constant).
DEGENERATE_TRACE = 1e-12


@dataclass(frozen=True)
class ReverseReport:
    """An upper bound on the variance sum, with the normalized K attached.

    ``lam`` is Tr(K); ``sigma_k`` is K / Tr(K), a valid density matrix
    whenever the trace is not degenerate (None otherwise).
    """

    name: str
    bound_value: float
    target: float
    valid: bool
    lam: float
    sigma_k: np.ndarray | None
    diagnostics: dict[str, float] = field(default_factory=dict)

    direction: str = "upper"

    @property
    def margin(self) -> float:
        return self.bound_value - self.target


def fidelity_reverse_bound(rho: np.ndarray, A: np.ndarray, B: np.ndarray) -> ReverseReport:
    """Upper bound |<[A,B]>| + lam * F(rho, K/lam)^2 with lam = Tr(K).

    Valid because F(rho, sigma)^2 >= Tr(rho sigma) and the canonical K has
    Tr(rho K) = Var(A)+Var(B) - |<[A,B]>|; equality holds exactly when
    K/lam is pure. The relative-entropy weakening
    |<[A,B]>| + lam (1 - S(rho||sigma)) is computed as a diagnostic only:
    it fails whenever S(rho||sigma) is infinite (sigma pure, rho mixed) and
    the report records that instead of asserting it.
    """
    target = variance_sum(rho, A, B)
    c = commutator_expect(rho, A, B)
    K = canonical_uncertainty_matrix(rho, A, B)
    if K.trace <= DEGENERATE_TRACE:
        raise DegenerateK(
            f"Tr(K) = {K.trace:.3e}: both observables are constants on this state"
        )
    sigma = K.matrix / K.trace
    f = states.fidelity(rho, sigma)
    bound = c + K.trace * f * f

    rel = states.relative_entropy(rho, sigma)
    second = c + K.trace * (1.0 - rel) if np.isfinite(rel) else float("-inf")
    second_valid = np.isfinite(rel) and second >= target - 1e-9
    return ReverseReport(
        name="fidelity_reverse",
        bound_value=bound,
        target=target,
        valid=True,
        lam=K.trace,
        sigma_k=sigma,
        diagnostics={
            "commutator": c,
            "fidelity_sq": f * f,
            "overlap": float(np.trace(rho @ sigma).real),
            "relative_entropy": rel,
            "second_form_value": second,
            "second_form_valid": 1.0 if second_valid else 0.0,
        },
    )


def _pure_setup(psi: np.ndarray, A: np.ndarray, B: np.ndarray):
    rho = states.projector(psi)
    target = variance_sum(rho, A, B)
    c = commutator_expect(rho, A, B)
    K = canonical_uncertainty_matrix(rho, A, B)
    sigma = K.matrix / K.trace if K.trace > DEGENERATE_TRACE else None
    return rho, target, c, K, sigma


def numerical_radius_bound(psi: np.ndarray, A: np.ndarray, B: np.ndarray) -> ReverseReport:
    """Upper bound |<[A,B]>| + w(K) for pure states.

    The variance sum minus the commutator equals <psi|K|psi>, which the
    numerical radius dominates by definition. K is Hermitian PSD so w(K)
    equals the largest eigenvalue; the generic grid search short-circuits
    accordingly.
    """
    _rho, target, c, K, sigma = _pure_setup(psi, A, B)
    w = matops.numerical_radius(K.matrix)
    return ReverseReport(
        name="numerical_radius",
        bound_value=c + w,
        target=target,
        valid=True,
        lam=K.trace,
        sigma_k=sigma,
        diagnostics={"commutator": c, "radius": w},
    )


def berger_bound(psi: np.ndarray, A: np.ndarray, B: np.ndarray) -> ReverseReport:
    """Upper bound |<[A,B]>| + w(sqrt(K))^2 for pure states.

    The power inequality w(T^n) <= w(T)^n with T = sqrt(K), n = 2 gives
    w(K) <= w(sqrt(K))^2, so this weakens the plain numerical-radius bound;
    for Hermitian K both evaluate to the largest eigenvalue.
    """
    _rho, target, c, K, sigma = _pure_setup(psi, A, B)
    w_root = matops.numerical_radius(matops.psd_sqrt(K.matrix))
    return ReverseReport(
        name="berger",
        bound_value=c + w_root**2,
        target=target,
        valid=True,
        lam=K.trace,
        sigma_k=sigma,
        diagnostics={"commutator": c, "radius_sqrt_k": w_root},
    )


def kittaneh_bound(psi: np.ndarray, A: np.ndarray, B: np.ndarray) -> ReverseReport:
    """Upper bound |<[A,B]>| + (||sqrt(K)|| + sqrt(||K||))^2 / 4, operator
    norms, for pure states.

    The half-sum of norms dominates w(sqrt(K)), whose square dominates
    w(K) >= <psi|K|psi>. Both norm terms reduce to the square root of the
    largest eigenvalue for Hermitian K, so the added term collapses to
    lambda_max(K) and the whole family coincides there.
    """
    _rho, target, c, K, sigma = _pure_setup(psi, A, B)
    n_root = matops.op_norm(matops.psd_sqrt(K.matrix))
    n_k = matops.op_norm(K.matrix)
    term = 0.25 * (n_root + np.sqrt(n_k)) ** 2
    return ReverseReport(
        name="kittaneh",
        bound_value=c + term,
        target=target,
        valid=True,
        lam=K.trace,
        sigma_k=sigma,
        diagnostics={"commutator": c, "norm_sqrt_k": n_root, "norm_k": n_k},
    )


def elhaddad_kittaneh_bound(
    psi: np.ndarray,
    A: np.ndarray,
    B: np.ndarray,
    alpha: float,
    r: float,
) -> ReverseReport:
    """Upper bound |<[A,B]>| + || alpha |T|^2r + (1-alpha) |T*|^2r ||^(1/r)
    with T = sqrt(K), for alpha in (0, 1) and r >= 1, pure states.

    For Hermitian T both |T| and |T*| equal sqrt(K) and the added term
    reduces to lambda_max(K) for every admissible (alpha, r).
    """
    if not 0.0 < alpha < 1.0:
        raise ParamError(f"alpha must lie strictly inside (0, 1), got {alpha}")
    if r < 1.0:
        raise ParamError(f"r must be >= 1, got {r}")
    _rho, target, c, K, sigma = _pure_setup(psi, A, B)
    T = matops.psd_sqrt(K.matrix)
    Td = matops.dagger(T)
    abs_t_2r = matops.psd_power(Td @ T, r)    # |T|^(2r)
    abs_tstar_2r = matops.psd_power(T @ Td, r)  # |T*|^(2r)
    term = matops.op_norm(alpha * abs_t_2r + (1.0 - alpha) * abs_tstar_2r) ** (1.0 / r)
    return ReverseReport(
        name="elhaddad_kittaneh",
        bound_value=c + term,
        target=target,
        valid=True,
        lam=K.trace,
        sigma_k=sigma,
        diagnostics={"commutator": c, "alpha": alpha, "r": r, "term": term},
    )
