"""Forward sum-uncertainty bounds on Var(A) + Var(B).

Built around the positive-semidefinite uncertainty matrix
K = (C + s*iD)(C - s*iD), s in {+1, -1}, with C = A - <A>, D = B - <B>.
The trace identity Tr(rho K_s) = Var(A) + Var(B) + s * Im<[A,B]> holds for
every state; the canonical sign minimizes Tr(rho K), which pins
Tr(rho K) = Var(A) + Var(B) - |<[A,B]>|.

Bounds provided: the Robertson sum bound, the orthogonal-vector projection
bound (mixed states, via vectorization), the optimization-free
Peierls-Bogoliubov bound, and the Bauer-Householder angle bound with its
saturating constructions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import matops, states
from .errors import DimensionError, InvalidAngle, NotOrthogonal, QuvarError

#: Eigenvalue cutoff below which K counts as singular for the
#: Bauer-Householder eigenvalue ratio (ratio treated as infinite).
SINGULAR_K_CUTOFF = 1e-12

#: cos(Upsilon) at or below this renders the angle bound invalid.
COS_UPSILON_CUTOFF = 1e-9


@dataclass(frozen=True)
class BoundReport:
    """One evaluated inequality.

    ``bound_value`` bounds ``target`` from the given ``direction`` whenever
    ``valid`` is true; ``diagnostics`` carries named scalars for auditing.
    """

    name: str
    bound_value: float
    target: float
    direction: str  # "lower" or "upper"
    valid: bool
    diagnostics: dict[str, float] = field(default_factory=dict)

    @property
    def margin(self) -> float:
        """Slack of the inequality; negative means violated."""
        if self.direction == "lower":
            return self.target - self.bound_value
        return self.bound_value - self.target


@dataclass(frozen=True)
class UncertaintyMatrix:
    """The PSD Hermitian K with its sign convention and summary scalars."""

    matrix: np.ndarray
    sign: int
    trace: float
    mean_a: float
    mean_b: float
    trace_plus: float   # Tr(rho K_{+1})
    trace_minus: float  # Tr(rho K_{-1})


def _check_pair(rho: np.ndarray, A: np.ndarray, B: np.ndarray | None = None):
    rho = states.check_density_matrix(rho)
    A = matops.require_hermitian(A, what="observable A")
    if A.shape != rho.shape:
        raise DimensionError(f"observable shape {A.shape} != state shape {rho.shape}")
    if B is None:
        return rho, A
    B = matops.require_hermitian(B, what="observable B")
    if B.shape != rho.shape:
        raise DimensionError(f"observable shape {B.shape} != state shape {rho.shape}")
    return rho, A, B


def expectation(rho: np.ndarray, A: np.ndarray) -> float:
    """<A> = Tr(rho A) for Hermitian A (real by construction)."""
    return float(np.trace(rho @ A).real)


def variance(rho: np.ndarray, A: np.ndarray) -> float:
    """Var(A) = Tr(rho A^2) - Tr(rho A)^2, clipped at tiny negative noise."""
    rho, A = _check_pair(rho, A)
    m = expectation(rho, A)
    v = float(np.trace(rho @ A @ A).real) - m * m
    if v < -matops.TOL:
        raise QuvarError(f"variance {v:.3e} negative beyond tolerance")
    return max(v, 0.0)


def variance_sum(rho: np.ndarray, A: np.ndarray, B: np.ndarray) -> float:
    return variance(rho, A) + variance(rho, B)


def commutator_expect_signed(rho: np.ndarray, A: np.ndarray, B: np.ndarray) -> float:
    """Im Tr(rho [A,B]). The expectation <[A,B]> is purely imaginary for
    Hermitian A, B, so this single real number carries it entirely."""
    rho, A, B = _check_pair(rho, A, B)
    return float(np.trace(rho @ (A @ B - B @ A)).imag)


def commutator_expect(rho: np.ndarray, A: np.ndarray, B: np.ndarray) -> float:
    """|<[A,B]>|."""
    return abs(commutator_expect_signed(rho, A, B))


def centered_pair(rho: np.ndarray, A: np.ndarray, B: np.ndarray):
    """(C, D, <A>, <B>) with C = A - <A>, D = B - <B>."""
    rho, A, B = _check_pair(rho, A, B)
    ma, mb = expectation(rho, A), expectation(rho, B)
    eye = np.eye(rho.shape[0], dtype=complex)
    return A - ma * eye, B - mb * eye, ma, mb


def uncertainty_matrix(rho: np.ndarray, A: np.ndarray, B: np.ndarray, sign: int) -> np.ndarray:
    """K_s = (C + s*iD)(C - s*iD) for s = sign in {+1, -1}."""
    if sign not in (+1, -1):
        raise QuvarError(f"sign must be +1 or -1, got {sign}")
    C, D, _, _ = centered_pair(rho, A, B)
    X = C - 1j * sign * D
    K = matops.dagger(X) @ X
    return 0.5 * (K + matops.dagger(K))


def canonical_uncertainty_matrix(rho: np.ndarray, A: np.ndarray, B: np.ndarray) -> UncertaintyMatrix:
    """K with the sign minimizing Tr(rho K); ties break to +1.

    The minimizing arrangement satisfies
    Tr(rho K) = Var(A) + Var(B) - |<[A,B]>| by construction.
    """
    C, D, ma, mb = centered_pair(rho, A, B)
    Kp = uncertainty_matrix(rho, A, B, +1)
    Km = uncertainty_matrix(rho, A, B, -1)
    tp = float(np.trace(rho @ Kp).real)
    tm = float(np.trace(rho @ Km).real)
    sign = +1 if tp <= tm else -1
    K = Kp if sign == +1 else Km
    return UncertaintyMatrix(
        matrix=K,
        sign=sign,
        trace=float(np.trace(K).real),
        mean_a=ma,
        mean_b=mb,
        trace_plus=tp,
        trace_minus=tm,
    )


def uncertainty_equality_residual(rho: np.ndarray, A: np.ndarray, B: np.ndarray) -> float:
    """Max over both signs of |Tr(rho K_s) - (Var(A)+Var(B) + s*Im<[A,B]>)|.

    Both sides are evaluated independently (matrix trace vs. scalar
    moments); the result should sit at float noise.
    """
    sv = variance_sum(rho, A, B)
    c = commutator_expect_signed(rho, A, B)
    res = 0.0
    for s in (+1, -1):
        lhs = float(np.trace(rho @ uncertainty_matrix(rho, A, B, s)).real)
        res = max(res, abs(lhs - (sv + s * c)))
    return res


def robertson_sum_bound(rho: np.ndarray, A: np.ndarray, B: np.ndarray) -> BoundReport:
    """Lower bound |<[A,B]>| on Var(A)+Var(B).

    Follows from 2 dA dB >= |<[A,B]>| and the AM-GM inequality
    dA^2 + dB^2 >= 2 dA dB.
    """
    target = variance_sum(rho, A, B)
    c = commutator_expect(rho, A, B)
    return BoundReport(
        name="robertson",
        bound_value=c,
        target=target,
        direction="lower",
        valid=True,
        diagnostics={"commutator": c},
    )


# ---------------------------------------------------------------------------
# Orthogonal-vector projection bound (mixed states, via vectorization)
# ---------------------------------------------------------------------------

def _vectorized_problem(rho: np.ndarray, A: np.ndarray, B: np.ndarray):
    """Lift (rho, A, B) to the pure problem on |sqrt(rho)> in d^2 dims."""
    d = rho.shape[0]
    eye = np.eye(d, dtype=complex)
    sq = states.vectorize(states.herm_sqrt(rho))
    return sq, np.kron(eye, A), np.kron(eye, B)


def perp_from_hermitian(rho: np.ndarray, M: np.ndarray) -> np.ndarray:
    """Unit vector orthogonal to |sqrt(rho)>, built by vectorizing a
    Hermitian matrix and projecting out its sqrt(rho) component.

    This is the restricted construction; arbitrary orthogonal vectors need
    not arise this way and generally give tighter projection bounds.
    """
    rho = states.check_density_matrix(rho)
    M = matops.require_hermitian(M, what="perp seed")
    sq = states.herm_sqrt(rho)
    M = M - np.trace(matops.dagger(sq) @ M).real * sq
    v = states.vectorize(M)
    n = np.linalg.norm(v)
    if n < 1e-12:
        raise QuvarError("seed matrix is parallel to sqrt(rho); no direction left")
    return v / n


def vectorized_projection_bound(
    rho: np.ndarray,
    A: np.ndarray,
    B: np.ndarray,
    perp: np.ndarray | None = None,
) -> BoundReport:
    """Lower bound |<[A,B]>| + |<sqrt(rho)| I(x)(A + u*iB) |perp>|^2.

    ``perp`` is a unit vector in the d^2-dimensional vectorization space,
    orthogonal to |sqrt(rho)>; the sign u is fixed so the commutator term
    enters as +|<[A,B]>|. When ``perp`` is omitted the closed-form optimum
    perp ~ (I (x) (C - u*iD))|sqrt(rho)> is used, for which the bound equals
    Var(A)+Var(B) exactly (Cauchy-Schwarz is saturated and the vector is
    automatically orthogonal because Tr(rho C) = Tr(rho D) = 0).
    """
    target = variance_sum(rho, A, B)
    c = commutator_expect_signed(rho, A, B)
    u = +1 if c <= 0 else -1
    sq, Alift, Blift = _vectorized_problem(rho, A, B)
    d2 = sq.size

    ma, mb = expectation(rho, A), expectation(rho, B)
    eye2 = np.eye(d2, dtype=complex)
    Clift = Alift - ma * eye2
    Dlift = Blift - mb * eye2

    optimal = perp is None
    if optimal:
        v = (Clift - 1j * u * Dlift) @ sq
        nv = np.linalg.norm(v)
        if nv > 1e-9:
            perp = v / nv
        else:
            # Minimum-uncertainty edge: any orthogonal direction works and
            # contributes nothing.
            basis = np.zeros(d2, dtype=complex)
            basis[int(np.argmin(np.abs(sq)))] = 1.0
            w = basis - np.vdot(sq, basis) * sq
            perp = w / np.linalg.norm(w)
    else:
        perp = np.asarray(perp, dtype=complex)
        if perp.shape != (d2,):
            raise DimensionError(f"perp must have length {d2}, got shape {perp.shape}")
        if abs(np.linalg.norm(perp) - 1.0) > 1e-8:
            raise NotOrthogonal("perp vector is not normalized")
        if abs(np.vdot(sq, perp)) > 1e-8:
            raise NotOrthogonal("perp vector is not orthogonal to |sqrt(rho)>")

    amp = np.vdot(sq, (Alift + 1j * u * Blift) @ perp)
    term = float(abs(amp) ** 2)
    bound = abs(c) + term
    return BoundReport(
        name="projection",
        bound_value=bound,
        target=target,
        direction="lower",
        valid=True,
        diagnostics={
            "commutator": abs(c),
            "projection_term": term,
            "sign": float(u),
            "optimal_perp": 1.0 if optimal else 0.0,
        },
    )


# ---------------------------------------------------------------------------
# Optimization-free entropy bound (Peierls-Bogoliubov)
# ---------------------------------------------------------------------------

def peierls_bogoliubov_bound(rho: np.ndarray, A: np.ndarray, B: np.ndarray) -> BoundReport:
    """Lower bound |<[A,B]>| + S(rho) - ln Tr exp(-K), canonical K.

    The Peierls-Bogoliubov inequality Tr(rho K) + Tr(rho ln rho)
    >= -ln Tr exp(-K) applied to the canonical trace identity. The three
    diagnostics separate the commutator, the mixing entropy, and the
    state-independent log-partition contribution.
    """
    target = variance_sum(rho, A, B)
    c = commutator_expect(rho, A, B)
    K = canonical_uncertainty_matrix(rho, A, B)
    entropy = states.von_neumann_entropy(rho)
    log_partition = float(np.log(np.sum(np.exp(-np.linalg.eigvalsh(K.matrix)))))
    bound = c + entropy - log_partition
    return BoundReport(
        name="peierls_bogoliubov",
        bound_value=bound,
        target=target,
        direction="lower",
        valid=True,
        diagnostics={
            "commutator": c,
            "entropy": entropy,
            "log_partition": log_partition,
        },
    )


@dataclass(frozen=True)
class SaturationResidual:
    """Distance of rho from the exp(-K) saturation point.

    ``frobenius`` is ||rho - exp(-K)||_F. For qubits the two decomposed
    residuals are also reported: the population equation
    |exp(-t) cosh|R| - 1/2| and the Bloch equation
    ||exp(-t) sinh(|R|)/|R| R + r/2||, where K = t*I + R.sigma.
    """

    frobenius: float
    qubit_population: float | None = None
    qubit_bloch: float | None = None


def pb_saturation_residual(rho: np.ndarray, A: np.ndarray, B: np.ndarray) -> SaturationResidual:
    """How far rho is from saturating the Peierls-Bogoliubov bound."""
    K = canonical_uncertainty_matrix(rho, A, B)
    expK = matops.herm_exp(-K.matrix)
    frob = float(np.linalg.norm(rho - expK))
    if rho.shape != (2, 2):
        return SaturationResidual(frobenius=frob)
    t = 0.5 * float(np.trace(K.matrix).real)
    R = np.array([0.5 * np.trace(K.matrix @ P).real for P in states.PAULIS])
    r = states.bloch_from_qubit(rho)
    Rn = np.linalg.norm(R)
    pop = abs(np.exp(-t) * np.cosh(Rn) - 0.5)
    sinhc = np.sinh(Rn) / Rn if Rn > 1e-300 else 1.0
    blo = float(np.linalg.norm(np.exp(-t) * sinhc * R + 0.5 * r))
    return SaturationResidual(frobenius=frob, qubit_population=pop, qubit_bloch=blo)


def pb_fixed_point_search(
    A: np.ndarray,
    B: np.ndarray,
    rho0: np.ndarray,
    iterations: int = 200,
    tol: float = 1e-8,
) -> tuple[np.ndarray, bool, float]:
    """Iterate rho -> exp(-K(rho)) / Tr exp(-K(rho)) looking for a state
    saturating the entropy bound.

    Returns (final state, converged flag, unnormalized residual
    ||rho - exp(-K(rho))||_F). Saturation additionally needs
    Tr exp(-K) = 1, so the iteration may settle without the residual
    vanishing; callers must check the flag.
    """
    rho = states.check_density_matrix(rho0)
    prev = rho
    for _ in range(iterations):
        K = canonical_uncertainty_matrix(rho, A, B)
        expK = matops.herm_exp(-K.matrix)
        rho = expK / np.trace(expK).real
        if np.linalg.norm(rho - prev) < tol:
            break
        prev = rho
    K = canonical_uncertainty_matrix(rho, A, B)
    residual = float(np.linalg.norm(rho - matops.herm_exp(-K.matrix)))
    return rho, residual < 1e-6, residual


# ---------------------------------------------------------------------------
# Bauer-Householder angle bound
# ---------------------------------------------------------------------------

def bauer_householder_geometry(K: np.ndarray, psi: np.ndarray, phi: np.ndarray) -> dict[str, float]:
    """Angle geometry of the Bauer-Householder inequality applied to sqrt(K).

    For unit vectors psi, phi at inner-product angle theta and PSD K with
    extremal eigenvalues l_max, l_min, the inequality
    |<phi|K|psi>| <= sqrt(<psi|K|psi><phi|K|phi>) cos(Upsilon) holds with
    Upsilon = 2 arccot(alpha cot(theta/2)) and alpha = sqrt(l_max/l_min)
    (the eigenvalue ratio of sqrt(K)). Singular K gives alpha = inf, hence
    Upsilon = 0 and the plain Cauchy-Schwarz geometry.

    Returns theta, alpha, cos_upsilon, the expectations of K in both
    vectors, and the two strengthening terms:
    ``term``      |<phi|K|psi>|^2 / (<K>_phi cos(Upsilon))
    ``term_sq``   |<phi|K|psi>|^2 / (<K>_phi cos(Upsilon)^2), the variant
                  that the derivation actually saturates.
    """
    psi = states.check_state_vector(psi)
    phi = states.check_state_vector(phi)
    K = matops.require_hermitian(K, what="uncertainty matrix")
    k_phi = float(np.vdot(phi, K @ phi).real)
    if k_phi <= 1e-14:
        raise InvalidAngle("phi lies in the kernel of K; angle geometry undefined")
    k_psi = float(np.vdot(psi, K @ psi).real)
    cross = float(abs(np.vdot(phi, K @ psi)) ** 2)
    overlap = min(float(abs(np.vdot(phi, psi))), 1.0)
    theta = float(np.arccos(overlap))

    w = np.linalg.eigvalsh(K)
    lmin = float(max(w[0], 0.0))
    lmax = float(max(w[-1], 0.0))
    alpha = np.sqrt(lmax / lmin) if lmin > SINGULAR_K_CUTOFF else np.inf

    if theta < 1e-12 or not np.isfinite(alpha):
        cos_ups = 1.0
    else:
        u = alpha / np.tan(0.5 * theta)
        cos_ups = float(np.cos(2.0 * np.arctan(1.0 / u)))

    term = cross / (k_phi * cos_ups) if cos_ups > COS_UPSILON_CUTOFF else np.inf
    term_sq = cross / (k_phi * cos_ups**2) if cos_ups > COS_UPSILON_CUTOFF else np.inf
    return {
        "theta": theta,
        "alpha": float(alpha),
        "cos_upsilon": cos_ups,
        "k_expect_phi": k_phi,
        "k_expect_psi": k_psi,
        "cross_term": cross,
        "term": float(term),
        "term_sq": float(term_sq),
    }


def _as_pure_problem(state: np.ndarray, A: np.ndarray, B: np.ndarray):
    """Normalize input into the pure problem (psi, A, B, rho)."""
    state = np.asarray(state)
    if state.ndim == 1:
        psi = states.check_state_vector(state)
        return psi, np.asarray(A, complex), np.asarray(B, complex), states.projector(psi)
    rho = states.check_density_matrix(state)
    sq, Alift, Blift = _vectorized_problem(rho, np.asarray(A, complex), np.asarray(B, complex))
    return sq, Alift, Blift, rho


def bauer_householder_bound(
    state: np.ndarray,
    A: np.ndarray,
    B: np.ndarray,
    phi: np.ndarray,
) -> BoundReport:
    """Lower bound |<[A,B]>| + |<phi|K|psi>|^2 / (<K>_phi cos(Upsilon)).

    ``state`` may be a pure state vector or a density matrix; mixed states
    are lifted to |sqrt(rho)> with I(x)A, I(x)B operators, in which case
    ``phi`` must live in the d^2-dimensional lifted space. The reported
    bound divides by cos(Upsilon); the cos^2 variant that the underlying
    derivation saturates is carried in diagnostics as ``bound_cos2``.
    The report is flagged invalid when cos(Upsilon) falls to zero (the
    generalized angle must stay acute).
    """
    psi, Aeff, Beff, rho = _as_pure_problem(state, A, B)
    Aorig = np.asarray(A, dtype=complex)
    Borig = np.asarray(B, dtype=complex)
    target = variance_sum(rho, Aorig, Borig)
    c = commutator_expect(rho, Aorig, Borig)

    rho_eff = states.projector(psi)
    K = canonical_uncertainty_matrix(rho_eff, Aeff, Beff)
    geo = bauer_householder_geometry(K.matrix, psi, np.asarray(phi, complex))

    valid = geo["cos_upsilon"] > COS_UPSILON_CUTOFF
    bound = c + geo["term"] if valid else float("inf")
    diagnostics = dict(geo)
    diagnostics["commutator"] = c
    diagnostics["bound_cos2"] = c + geo["term_sq"] if valid else float("inf")
    return BoundReport(
        name="bauer_householder",
        bound_value=bound,
        target=target,
        direction="lower",
        valid=valid,
        diagnostics=diagnostics,
    )


def condition2_pair(
    K: np.ndarray,
    theta: float,
    phases: tuple[complex, complex, complex] = (1.0, 1.0, 1.0),
) -> tuple[np.ndarray, np.ndarray]:
    """The saturating vector pair built from the extremal eigenvectors of K.

    With m = cos(theta), |max>, |min> the eigenvectors of the largest and
    smallest eigenvalues, and unimodular phases (xi, eta, eps):

        psi = (xi sqrt(1+|m|) |max> - eta sqrt(1-|m|) |min>) / sqrt(2)
        phi = eps (xi sqrt(1+|m|) |max> + eta sqrt(1-|m|) |min>) / sqrt(2)

    The pair has inner-product angle theta and saturates the cos^2 variant
    of the angle bound exactly.
    """
    xi, eta, eps = (p / abs(p) for p in map(complex, phases))
    sys = matops.herm_eig(K)
    vmax = sys.eigenvectors[:, -1]
    vmin = sys.eigenvectors[:, 0]
    m = abs(np.cos(theta))
    hi, lo = np.sqrt(1.0 + m), np.sqrt(1.0 - m)
    psi = (xi * hi * vmax - eta * lo * vmin) / np.sqrt(2.0)
    phi = eps * (xi * hi * vmax + eta * lo * vmin) / np.sqrt(2.0)
    return psi, phi


def _condition2_candidate(K: np.ndarray, psi: np.ndarray) -> np.ndarray | None:
    """Reflection of psi's extremal-eigenvector components, the companion
    vector the saturating construction would pair with psi."""
    sys = matops.herm_eig(K)
    vmax, vmin = sys.eigenvectors[:, -1], sys.eigenvectors[:, 0]
    a, b = np.vdot(vmax, psi), np.vdot(vmin, psi)
    n = np.sqrt(abs(a) ** 2 + abs(b) ** 2)
    if n < 1e-12:
        return None
    return (a * vmax - b * vmin) / n


def bauer_householder_optimized(
    state: np.ndarray,
    A: np.ndarray,
    B: np.ndarray,
    trials: int = 64,
    seed=0,
    include_self: bool = True,
) -> BoundReport:
    """Best angle bound over Haar-random phi plus the analytic candidates.

    Candidates are ``trials`` Haar-random unit vectors, the state itself
    (which saturates: theta = 0 gives the plain expectation) unless
    ``include_self`` is false, and the extremal-eigenvector reflection.
    """
    if trials < 1:
        raise QuvarError(f"trials must be >= 1, got {trials}")
    psi, Aeff, Beff, _rho = _as_pure_problem(state, A, B)
    dim = psi.size
    rng = np.random.default_rng(seed)
    candidates = [states.random_pure(dim, rng) for _ in range(trials)]
    if include_self:
        candidates.append(psi)
    K = canonical_uncertainty_matrix(states.projector(psi), Aeff, Beff)
    refl = _condition2_candidate(K.matrix, psi)
    if refl is not None:
        candidates.append(refl)

    best: BoundReport | None = None
    n_valid = 0
    for phi in candidates:
        try:
            rep = bauer_householder_bound(state, A, B, phi)
        except InvalidAngle:
            continue
        if not rep.valid:
            continue
        n_valid += 1
        if best is None or rep.bound_value > best.bound_value:
            best = rep
    if best is None:
        return BoundReport(
            name="bauer_householder_optimized",
            bound_value=float("-inf"),
            target=variance_sum(_rho, np.asarray(A, complex), np.asarray(B, complex)),
            direction="lower",
            valid=False,
            diagnostics={"n_valid": 0.0},
        )
    diagnostics = dict(best.diagnostics)
    diagnostics["n_valid"] = float(n_valid)
    return BoundReport(
        name="bauer_householder_optimized",
        bound_value=best.bound_value,
        target=best.target,
        direction="lower",
        valid=True,
        diagnostics=diagnostics,
    )
