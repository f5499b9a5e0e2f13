"""Markovian (Lindblad) evolution and reverse-speed-limit bookkeeping.

A trajectory integrates d(rho)/dt = -i[H, rho] + sum_k g_k (L_k rho L_k^dag
- {L_k^dag L_k, rho}/2) with a classical fixed-step 4th-order scheme and
stores, per grid point, the state, its Bures angle to the initial state,
and the generator output. The reverse-speed-limit chain then checks the
monotonicity assumptions, the pointwise entropy inequality

    sin(2 L) dL/dt >= S(rho_0) - ln Tr exp(-+ generator(rho(t))),

its time integral, and the sign of the averaged rate that would turn the
integral into an upper bound on the evolution time. For trace-preserving
generators Tr exp(-+ L(rho)) >= d while S(rho_0) <= ln d, so that averaged
rate is never positive; the report states this rather than asserting the
time bound unconditionally.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import matops, states
from .errors import DimensionError, IntegrationDiverged, QuvarError

#: Drift beyond this triggers re-projection of the state (logged).
PROJECTION_THRESHOLD = 1e-9

#: Invariant violation beyond this aborts the integration.
DIVERGENCE_THRESHOLD = 1e-6

#: Slack allowed when classifying Bures monotonicity and generator signs.
SIGN_TOL = 1e-9


@dataclass(frozen=True)
class LindbladGenerator:
    """Time-independent generator: Hamiltonian, jump operators, rates."""

    hamiltonian: np.ndarray
    jump_ops: tuple[np.ndarray, ...] = ()
    rates: tuple[float, ...] = ()

    def __post_init__(self):
        H = matops.require_hermitian(self.hamiltonian, what="Hamiltonian")
        object.__setattr__(self, "hamiltonian", H)
        jumps = tuple(np.asarray(L, dtype=complex) for L in self.jump_ops)
        object.__setattr__(self, "jump_ops", jumps)
        rates = tuple(float(g) for g in self.rates)
        object.__setattr__(self, "rates", rates)
        if len(jumps) != len(rates):
            raise DimensionError("jump_ops and rates must have equal length")
        if any(g < 0 for g in rates):
            raise QuvarError("rates must be nonnegative")
        for L in jumps:
            if L.shape != H.shape:
                raise DimensionError("jump operator shape differs from Hamiltonian")

    @property
    def dim(self) -> int:
        return self.hamiltonian.shape[0]


def lindblad_apply(gen: LindbladGenerator, rho: np.ndarray) -> np.ndarray:
    """Generator output -i[H, rho] + dissipator; Hermitian and traceless."""
    rho = np.asarray(rho, dtype=complex)
    H = gen.hamiltonian
    out = -1j * (H @ rho - rho @ H)
    for g, L in zip(gen.rates, gen.jump_ops):
        Ld = matops.dagger(L)
        LdL = Ld @ L
        out = out + g * (L @ rho @ Ld - 0.5 * (LdL @ rho + rho @ LdL))
    return 0.5 * (out + matops.dagger(out))


@dataclass(frozen=True)
class Trajectory:
    """Time-ordered evolution record.

    ``states[k]`` is the state at ``times[k]``; ``bures[k]`` its Bures angle
    to ``states[0]`` (so ``bures[0] = 0``); ``gen_out[k]`` the generator
    applied to it. ``drift_log`` records (step index, drift) whenever the
    integrator had to re-project a state.
    """

    times: np.ndarray
    states: tuple[np.ndarray, ...]
    bures: np.ndarray
    gen_out: tuple[np.ndarray, ...]
    drift_log: tuple[tuple[int, float], ...] = field(default=())

    @property
    def tau(self) -> float:
        return float(self.times[-1] - self.times[0])

    @property
    def dt(self) -> float:
        return float(self.times[1] - self.times[0])


def _state_drift(rho: np.ndarray) -> float:
    """Worst violation of Hermiticity, unit trace, or positivity."""
    asym = matops.hermitian_asymmetry(rho)
    tr = abs(np.trace(rho).real - 1.0)
    wmin = float(np.linalg.eigvalsh(0.5 * (rho + matops.dagger(rho)))[0])
    return max(asym, tr, max(-wmin, 0.0))


def _project_to_state(rho: np.ndarray) -> np.ndarray:
    rho = 0.5 * (rho + matops.dagger(rho))
    w, V = np.linalg.eigh(rho)
    w = np.clip(w, 0.0, None)
    rho = (V * w) @ matops.dagger(V)
    return rho / np.trace(rho).real


def evolve(rho0: np.ndarray, gen: LindbladGenerator, tau: float, dt: float) -> Trajectory:
    """Integrate the master equation with fixed-step RK4.

    Requires dt <= tau / 100. States drifting beyond 1e-9 from the state
    manifold are re-projected (and the drift logged); drift beyond 1e-6
    aborts with IntegrationDiverged.
    """
    rho0 = states.check_density_matrix(rho0)
    if rho0.shape != gen.hamiltonian.shape:
        raise DimensionError("initial state dimension differs from generator")
    if tau <= 0:
        raise QuvarError(f"tau must be positive, got {tau}")
    if dt > tau / 100.0:
        raise QuvarError(f"dt = {dt} too coarse; need dt <= tau/100 = {tau / 100.0}")
    n_steps = int(np.ceil(tau / dt - 1e-12))
    h = tau / n_steps

    def rhs(r):
        return lindblad_apply(gen, r)

    times = [0.0]
    traj = [rho0]
    drift_log: list[tuple[int, float]] = []
    rho = rho0
    for k in range(n_steps):
        k1 = rhs(rho)
        k2 = rhs(rho + 0.5 * h * k1)
        k3 = rhs(rho + 0.5 * h * k2)
        k4 = rhs(rho + h * k3)
        rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        drift = _state_drift(rho)
        if drift > DIVERGENCE_THRESHOLD:
            raise IntegrationDiverged(
                f"state invariants violated by {drift:.3e} at step {k + 1}"
            )
        if drift > PROJECTION_THRESHOLD:
            rho = _project_to_state(rho)
            drift_log.append((k + 1, drift))
        traj.append(rho)
        times.append((k + 1) * h)

    bures = np.array([states.bures_angle(rho0, r) for r in traj])
    gen_out = tuple(lindblad_apply(gen, r) for r in traj)
    return Trajectory(
        times=np.array(times),
        states=tuple(traj),
        bures=bures,
        gen_out=gen_out,
        drift_log=tuple(drift_log),
    )


@dataclass(frozen=True)
class AssumptionReport:
    """Whether the reverse-speed-limit assumptions hold on a trajectory.

    ``generator_sign`` is +1 / -1 when Tr[rho_0 gen(rho(t))] keeps that sign
    along the whole grid, 0 when it changes sign or is identically zero
    (``degenerate`` distinguishes the latter).
    """

    monotone_bures: bool
    generator_sign: int
    degenerate: bool
    max_bures_decrease: float
    overlap_range: tuple[float, float]

    @property
    def passed(self) -> bool:
        return self.monotone_bures and self.generator_sign != 0


def qsl_assumption_check(traj: Trajectory, rho0: np.ndarray) -> AssumptionReport:
    """Check Bures monotonicity and the sign of Tr[rho_0 gen(rho(t))]."""
    rho0 = states.check_density_matrix(rho0)
    diffs = np.diff(traj.bures)
    max_dec = float(max(0.0, -diffs.min())) if diffs.size else 0.0
    monotone = max_dec <= SIGN_TOL
    overlaps = np.array([np.trace(rho0 @ G).real for G in traj.gen_out])
    lo, hi = float(overlaps.min()), float(overlaps.max())
    if hi <= SIGN_TOL and lo < -SIGN_TOL:
        sign = -1
    elif lo >= -SIGN_TOL and hi > SIGN_TOL:
        sign = +1
    else:
        sign = 0
    degenerate = max(abs(lo), abs(hi)) <= SIGN_TOL
    return AssumptionReport(
        monotone_bures=monotone,
        generator_sign=sign,
        degenerate=degenerate,
        max_bures_decrease=max_dec,
        overlap_range=(lo, hi),
    )


def _log_partition(gen_out: np.ndarray, branch_sign: int) -> float:
    """ln Tr exp(-branch_sign * gen_out); the exponent matrix is Hermitian."""
    w = np.linalg.eigvalsh(-branch_sign * gen_out)
    return float(np.log(np.sum(np.exp(w))))


def reverse_rate(traj: Trajectory, rho0: np.ndarray, branch_sign: int) -> float:
    """Time average of S(rho_0) - ln Tr exp(-+ gen(rho(t))) over the grid.

    ``branch_sign`` follows the sign of Tr[rho_0 gen(rho(t))]: +1 selects
    exp(-gen), -1 selects exp(+gen). Trapezoidal quadrature on the stored
    grid divided by the horizon. Trace preservation makes every integrand
    value at most S(rho_0) - ln d, so the result is never positive for
    initial states below maximal mixedness.
    """
    if branch_sign not in (+1, -1):
        raise QuvarError(f"branch_sign must be +1 or -1, got {branch_sign}")
    rho0 = states.check_density_matrix(rho0)
    entropy = states.von_neumann_entropy(rho0)
    integrand = np.array(
        [entropy - _log_partition(G, branch_sign) for G in traj.gen_out]
    )
    return float(np.trapezoid(integrand, traj.times) / traj.tau)


@dataclass(frozen=True)
class PointwiseCheck:
    """Result of the pointwise entropy inequality scan.

    ``max_violation`` is the largest RHS - LHS over interior grid points
    (positive would mean the inequality failed there); None when the scan
    was skipped because the assumptions do not hold.
    """

    checked: bool
    max_violation: float | None
    reason: str = ""


def pointwise_pb_check(traj: Trajectory, rho0: np.ndarray, branch_sign: int) -> PointwiseCheck:
    """Verify sin(2L) dL/dt >= S(rho_0) - ln Tr exp(-+ gen(rho)) pointwise.

    dL/dt comes from central differences at interior grid points; both
    endpoints are skipped. Returns the maximum signed violation.
    """
    assumptions = qsl_assumption_check(traj, rho0)
    if not assumptions.monotone_bures:
        return PointwiseCheck(checked=False, max_violation=None, reason="non-monotone Bures angle")
    if assumptions.generator_sign == 0 and not assumptions.degenerate:
        return PointwiseCheck(checked=False, max_violation=None, reason="generator overlap changes sign")
    rho0 = states.check_density_matrix(rho0)
    entropy = states.von_neumann_entropy(rho0)
    t, b = traj.times, traj.bures
    worst = -np.inf
    for i in range(1, len(t) - 1):
        dldt = (b[i + 1] - b[i - 1]) / (t[i + 1] - t[i - 1])
        lhs = np.sin(2.0 * b[i]) * dldt
        rhs = entropy - _log_partition(traj.gen_out[i], branch_sign)
        worst = max(worst, rhs - lhs)
    return PointwiseCheck(checked=True, max_violation=float(worst))


@dataclass(frozen=True)
class ReverseSpeedLimitReport:
    """Full reverse-speed-limit evaluation of one trajectory."""

    assumptions: AssumptionReport
    branch_sign: int
    rate: float
    integrated_lhs: float       # sin^2 L_tau - sin^2 L_0
    integrated_rhs: float       # tau * rate
    integrated_holds: bool
    pointwise: PointwiseCheck
    tau_bound: float | None
    tau_bound_valid: bool
    reason: str = ""


def reverse_qsl_report(traj: Trajectory, rho0: np.ndarray) -> ReverseSpeedLimitReport:
    """Evaluate the integrated inequality and the conditional time bound.

    The integrated inequality sin^2(L_tau) >= tau * rate is asserted
    whenever the assumptions hold. The time bound tau <= sin^2(L_tau)/rate
    needs a positive rate to divide by; the report emits it as valid only
    then, and otherwise flags the vacuity explicitly.
    """
    assumptions = qsl_assumption_check(traj, rho0)
    branch = assumptions.generator_sign if assumptions.generator_sign != 0 else +1
    rate = reverse_rate(traj, rho0, branch)
    lhs = float(np.sin(traj.bures[-1]) ** 2 - np.sin(traj.bures[0]) ** 2)
    rhs = traj.tau * rate
    holds = (lhs >= rhs - 1e-9) if assumptions.passed or assumptions.degenerate else False
    pointwise = pointwise_pb_check(traj, rho0, branch)
    if rate > 0:
        return ReverseSpeedLimitReport(
            assumptions=assumptions,
            branch_sign=branch,
            rate=rate,
            integrated_lhs=lhs,
            integrated_rhs=rhs,
            integrated_holds=holds,
            pointwise=pointwise,
            tau_bound=lhs / rate,
            tau_bound_valid=assumptions.passed,
        )
    return ReverseSpeedLimitReport(
        assumptions=assumptions,
        branch_sign=branch,
        rate=rate,
        integrated_lhs=lhs,
        integrated_rhs=rhs,
        integrated_holds=holds,
        pointwise=pointwise,
        tau_bound=None,
        tau_bound_valid=False,
        reason="nonpositive reverse rate",
    )
