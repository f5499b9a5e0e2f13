"""Experiment harness: figure data, randomized inequality audits, scenario
runs, and the flat-file plumbing shared by the command-line front end.

Stochastic sweeps draw per-instance generators from a base seed plus the
instance index, so runs are reproducible and row order is deterministic.
CSV floats are serialized with 12 significant digits; identical seed and
configuration give byte-identical files.
"""

from __future__ import annotations

import json
import math
from typing import Iterable, Sequence

import numpy as np

from . import bounds, dynamics, matops, multiobs, protocol, qubitgeo, reverse, states
from .errors import ConfigError, NoSolution

# Spin-1 ladder observables used by the qutrit family sweep (hbar = 1).
SPIN1_JX = (1.0 / np.sqrt(2.0)) * np.array(
    [[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex
)
SPIN1_JY = (1.0 / np.sqrt(2.0)) * np.array(
    [[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=complex
)
SPIN1_JZ = np.diag([1.0, 0.0, -1.0]).astype(complex)


def qutrit_family_state(p: float) -> np.ndarray:
    """rho(p) = p |psi><psi| + (1-p) I/3 with psi = (1,1,1)/sqrt(3)."""
    if not 0.0 <= p <= 1.0:
        raise ConfigError(f"family parameter p must lie in [0, 1], got {p}")
    psi = np.ones(3, dtype=complex) / np.sqrt(3.0)
    return p * np.outer(psi, psi.conj()) + (1.0 - p) * np.eye(3, dtype=complex) / 3.0


# ---------------------------------------------------------------------------
# CSV plumbing
# ---------------------------------------------------------------------------

def format_value(v) -> str:
    """12-significant-digit float formatting; integers pass through."""
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.12g}"


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    """Write rows under a one-line header, deterministically formatted."""
    lines = [",".join(header)]
    lines.extend(",".join(format_value(v) for v in row) for row in rows)
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def matrix_to_pairs(M: np.ndarray) -> list[list[list[float]]]:
    """Complex matrix as nested [re, im] pairs (the JSON wire format)."""
    M = np.asarray(M, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def matrix_from_pairs(data) -> np.ndarray:
    """Inverse of matrix_to_pairs, validating the nesting."""
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"matrix entries must be [re, im] pairs: {exc}") from None
    if arr.ndim != 3 or arr.shape[-1] != 2:
        raise ConfigError(f"matrix must be nested [re, im] pairs, got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


# ---------------------------------------------------------------------------
# Figure data
# ---------------------------------------------------------------------------

FIG1_HEADER = ["p", "sum_variances", "robertson", "theorem2_pb", "theorem4_reverse"]


def fig1_rows(p_grid: Sequence[float]) -> list[tuple]:
    """Qutrit family sweep: variance sum against its lower and upper bounds."""
    if len(p_grid) == 0:
        raise ConfigError("p grid must be nonempty")
    rows = []
    for p in p_grid:
        rho = qutrit_family_state(float(p))
        target = bounds.variance_sum(rho, SPIN1_JX, SPIN1_JY)
        rob = bounds.robertson_sum_bound(rho, SPIN1_JX, SPIN1_JY).bound_value
        pb = bounds.peierls_bogoliubov_bound(rho, SPIN1_JX, SPIN1_JY).bound_value
        rev = reverse.fidelity_reverse_bound(rho, SPIN1_JX, SPIN1_JY).bound_value
        rows.append((float(p), target, rob, pb, rev))
    return rows


FIG3_HEADER = ["angle", "blochRadius", "purity_of_rho"]


def fig3_rows(samples: int, seed: int) -> list[tuple]:
    """Random qubit states and direction pairs: angle vs Bloch radius of the
    normalized uncertainty matrix, with the state purity alongside."""
    if samples < 1:
        raise ConfigError(f"samples must be >= 1, got {samples}")
    rng = np.random.default_rng(seed)
    G = rng.normal(size=(samples, 2, 2)) + 1j * rng.normal(size=(samples, 2, 2))
    W = G @ np.conj(np.transpose(G, (0, 2, 1)))
    tr = np.trace(W, axis1=1, axis2=2).real
    rho = W / tr[:, None, None]
    r = np.stack(
        [
            2.0 * rho[:, 1, 0].real,
            2.0 * rho[:, 1, 0].imag,
            (rho[:, 0, 0] - rho[:, 1, 1]).real,
        ],
        axis=1,
    )
    n1 = rng.normal(size=(samples, 3))
    n1 /= np.linalg.norm(n1, axis=1, keepdims=True)
    n2 = rng.normal(size=(samples, 3))
    n2 /= np.linalg.norm(n2, axis=1, keepdims=True)

    p1 = np.sum(r * n1, axis=1)
    p2 = np.sum(r * n2, axis=1)
    dots = np.clip(np.sum(n1 * n2, axis=1), -1.0, 1.0)
    alpha = 1.0 + p1 * p1
    beta = 1.0 + p2 * p2
    gamma = p1 * p2 - dots
    radius = np.sqrt(np.clip(alpha * beta - gamma * gamma, 0.0, None)) / (0.5 * (alpha + beta))
    angle = np.arccos(dots)
    pur = 0.5 * (1.0 + np.sum(r * r, axis=1))
    return list(zip(angle.tolist(), radius.tolist(), pur.tolist()))


HEXAGON_HEADER = [
    "index",
    "dim",
    "residual_variant1",
    "residual_variant2",
    "norm_sum",
    "decomp_full_comm",
    "decomp_half_comm",
]


def hexagon_rows(samples: int, seed: int, dim: int = 3) -> list[tuple]:
    """Chord-identity residuals on random pure states and observables."""
    if samples < 1:
        raise ConfigError(f"samples must be >= 1, got {samples}")
    rows = []
    for i in range(samples):
        rng = np.random.default_rng([seed, i])
        psi = states.random_pure(dim, rng)
        A, B, C = (states.random_observable(dim, rng) for _ in range(3))
        r1 = multiobs.hexagon_identity_check(psi, A, B, C, 1)
        r2 = multiobs.hexagon_identity_check(psi, A, B, C, 2)
        dec = multiobs.side_norm_decomposition(psi, A, B, C)
        rows.append((i, dim, r1, r2, dec.norm_sum, dec.decomp_full_comm, dec.decomp_half_comm))
    return rows


# ---------------------------------------------------------------------------
# Monotone-trend statistic
# ---------------------------------------------------------------------------

def pava_nondecreasing(values: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Weighted isotonic (non-decreasing) fit by pool-adjacent-violators."""
    blocks = [[float(v), float(w)] for v, w in zip(values, weights)]
    sizes = [1] * len(blocks)
    i = 0
    while i < len(blocks) - 1:
        if blocks[i][0] > blocks[i + 1][0] + 1e-15:
            v1, w1 = blocks[i]
            v2, w2 = blocks[i + 1]
            merged = [(v1 * w1 + v2 * w2) / (w1 + w2), w1 + w2]
            blocks[i : i + 2] = [merged]
            sizes[i : i + 2] = [sizes[i] + sizes[i + 1]]
            i = max(i - 1, 0)
        else:
            i += 1
    out = []
    for (v, _), n in zip(blocks, sizes):
        out.extend([v] * n)
    return np.array(out)


def monotone_binned_trend(x: np.ndarray, y: np.ndarray, n_bins: int = 5) -> dict:
    """Bin y by x and test the bin means against a non-decreasing fit.

    Passes when every bin mean sits within two standard errors of the
    isotonic fit of the means.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    edges = np.linspace(x.min(), x.max(), n_bins + 1)
    idx = np.clip(np.digitize(x, edges[1:-1]), 0, n_bins - 1)
    means = np.empty(n_bins)
    sems = np.empty(n_bins)
    counts = np.empty(n_bins)
    for b in range(n_bins):
        sel = y[idx == b]
        counts[b] = sel.size
        means[b] = sel.mean() if sel.size else np.nan
        sems[b] = sel.std(ddof=1) / np.sqrt(sel.size) if sel.size > 1 else np.inf
    fit = pava_nondecreasing(means, counts)
    ok = bool(np.all(np.abs(means - fit) <= 2.0 * sems))
    return {
        "bin_means": means.tolist(),
        "bin_sems": sems.tolist(),
        "bin_counts": counts.tolist(),
        "monotone_fit": fit.tolist(),
        "passed": ok,
    }


# ---------------------------------------------------------------------------
# Randomized inequality audit
# ---------------------------------------------------------------------------

def random_instance(dim: int, rng) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """One (rho, A, B) draw: HS-random state, GUE-style observables."""
    rho = states.random_mixed(dim, rng)
    A = states.random_observable(dim, rng)
    B = states.random_observable(dim, rng)
    return rho, A, B


def _family(worst: float, threshold: float, count: int, counterexample=None) -> dict:
    entry = {
        "passed": bool(worst <= threshold),
        "worst_margin": float(worst),
        "threshold": float(threshold),
        "count": int(count),
    }
    if counterexample is not None and not entry["passed"]:
        entry["counterexample"] = counterexample
    return entry


def _dump_instance(rho, A, B) -> dict:
    return {
        "rho": matrix_to_pairs(rho),
        "A": matrix_to_pairs(A),
        "B": matrix_to_pairs(B),
    }


def audit_all(
    dims: Sequence[int] = (2, 3, 4),
    samples: int = 1000,
    seed: int = 20240901,
    pure_samples: int = 500,
    cond2_samples: int = 100,
    trend_samples: int = 60000,
    protocol_samples: int = 30,
) -> dict:
    """Run every randomized inequality family and collect a JSON-able summary.

    Asserted families must pass for the audit to pass; diagnostics record
    measured behavior (including counterexamples to the relative-entropy
    reverse form and to the printed concurrence identity) without gating.
    """
    if any(d < 2 for d in dims):
        raise ConfigError(f"dims must all be >= 2, got {list(dims)}")
    families: dict[str, dict] = {}
    diagnostics: dict[str, dict] = {}

    # Mixed-state families on the shared instance stream.
    worst_eq = worst_rob = worst_pb = worst_t1r = worst_t1o = worst_t4 = -np.inf
    arg_worst = {}
    for i in range(samples):
        rng = np.random.default_rng([seed, i])
        d = int(dims[i % len(dims)])
        rho, A, B = random_instance(d, rng)
        sv = bounds.variance_sum(rho, A, B)

        eq = bounds.uncertainty_equality_residual(rho, A, B)
        rob = bounds.robertson_sum_bound(rho, A, B).bound_value - sv
        pb = bounds.peierls_bogoliubov_bound(rho, A, B).bound_value - sv
        sq = states.vectorize(states.herm_sqrt(rho))
        w = rng.normal(size=d * d) + 1j * rng.normal(size=d * d)
        w = w - np.vdot(sq, w) * sq
        w /= np.linalg.norm(w)
        t1r = bounds.vectorized_projection_bound(rho, A, B, perp=w).bound_value - sv
        t1o = abs(bounds.vectorized_projection_bound(rho, A, B).bound_value - sv)
        t4 = sv - reverse.fidelity_reverse_bound(rho, A, B).bound_value

        if eq > worst_eq:
            worst_eq = eq
        if rob > worst_rob:
            worst_rob, arg_worst["robertson"] = rob, (rho, A, B)
        if pb > worst_pb:
            worst_pb, arg_worst["pb"] = pb, (rho, A, B)
        if t1r > worst_t1r:
            worst_t1r, arg_worst["t1r"] = t1r, (rho, A, B)
        if t1o > worst_t1o:
            worst_t1o = t1o
        if t4 > worst_t4:
            worst_t4, arg_worst["t4"] = t4, (rho, A, B)

    families["uncertainty_equality"] = _family(worst_eq, 1e-10, samples)
    families["robertson_below_sum"] = _family(
        worst_rob, 1e-9, samples, _dump_instance(*arg_worst["robertson"])
    )
    families["entropy_bound_below_sum"] = _family(
        worst_pb, 1e-8, samples, _dump_instance(*arg_worst["pb"])
    )
    families["projection_random_perp_below_sum"] = _family(
        worst_t1r, 1e-8, samples, _dump_instance(*arg_worst["t1r"])
    )
    families["projection_optimal_saturates"] = _family(worst_t1o, 1e-9, samples)
    families["fidelity_reverse_above_sum"] = _family(
        worst_t4, 1e-8, samples, _dump_instance(*arg_worst["t4"])
    )

    # Pure-state reverse family.
    worst_family = -np.inf
    for i in range(pure_samples):
        rng = np.random.default_rng([seed, 10_000_000 + i])
        d = int(dims[i % len(dims)])
        psi = states.random_pure(d, rng)
        A = states.random_observable(d, rng)
        B = states.random_observable(d, rng)
        rho = states.projector(psi)
        sv = bounds.variance_sum(rho, A, B)
        vals = [
            reverse.numerical_radius_bound(psi, A, B).bound_value,
            reverse.berger_bound(psi, A, B).bound_value,
            reverse.kittaneh_bound(psi, A, B).bound_value,
            reverse.elhaddad_kittaneh_bound(psi, A, B, 0.5, 1.0).bound_value,
            reverse.elhaddad_kittaneh_bound(psi, A, B, 0.25, 2.0).bound_value,
        ]
        worst_family = max(worst_family, sv - min(vals))
    families["numerical_radius_family_above_sum"] = _family(
        worst_family, 1e-8, pure_samples
    )

    # Angle-bound saturating construction on random spectra.
    worst_cond2 = -np.inf
    for i in range(cond2_samples):
        rng = np.random.default_rng([seed, 20_000_000 + i])
        d = int(rng.integers(2, 6))
        spec_vals = np.sort(rng.uniform(0.2, 5.0, size=d))
        Q, _ = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
        K = (Q * spec_vals) @ matops.dagger(Q)
        theta = rng.uniform(0.05, np.pi / 2)
        phases = tuple(np.exp(1j * rng.uniform(0, 2 * np.pi, size=3)))
        psi, phi = bounds.condition2_pair(K, theta, phases)
        geo = bounds.bauer_householder_geometry(K, psi, phi)
        worst_cond2 = max(worst_cond2, abs(geo["term_sq"] - geo["k_expect_psi"]))
    families["angle_bound_condition2_saturates"] = _family(
        worst_cond2, 1e-8, cond2_samples
    )

    # Shift invariance of the projection bound.
    worst_shift = -np.inf
    for i in range(50):
        rng = np.random.default_rng([seed, 30_000_000 + i])
        d = int(dims[i % len(dims)])
        rho, A, B = random_instance(d, rng)
        c1, c2 = rng.normal(size=2)
        b1 = bounds.vectorized_projection_bound(rho, A, B).bound_value
        b2 = bounds.vectorized_projection_bound(
            rho, A + c1 * np.eye(d), B + c2 * np.eye(d)
        ).bound_value
        worst_shift = max(worst_shift, abs(b1 - b2))
    families["projection_shift_invariance"] = _family(worst_shift, 1e-10, 50)

    # State-metric sandwich and overlap bound.
    worst_fvg = worst_overlap = -np.inf
    for i in range(samples):
        rng = np.random.default_rng([seed, 40_000_000 + i])
        d = int(dims[i % len(dims)]) if dims[i % len(dims)] <= 4 else 4
        rho = states.random_mixed(d, rng)
        sigma = states.random_mixed(d, rng)
        f = states.fidelity(rho, sigma)
        dist = states.trace_distance(rho, sigma)
        worst_fvg = max(
            worst_fvg,
            (1.0 - f) - dist - 1e-9,
            dist - np.sqrt(max(1.0 - f * f, 0.0)) - 1e-9,
        )
        worst_overlap = max(worst_overlap, float(np.trace(rho @ sigma).real) - f * f)
    families["fuchs_van_de_graaf"] = _family(worst_fvg, 0.0, samples)
    families["fidelity_sq_above_overlap"] = _family(worst_overlap, 1e-9, samples)

    # Qubit geometry: closed form vs direct matrix, and the scatter trend.
    worst_geo = -np.inf
    for i in range(2000):
        rng = np.random.default_rng([seed, 50_000_000 + i])
        r = states.bloch_from_qubit(states.random_mixed(2, rng))
        n1 = rng.normal(size=3)
        n1 /= np.linalg.norm(n1)
        n2 = rng.normal(size=3)
        n2 /= np.linalg.norm(n2)
        rec = qubitgeo.normalized_uncertainty_bloch(r, n1, n2)  # cross-validates
        worst_geo = max(worst_geo, 0.0)
        del rec
    families["purity_closed_form_matches_matrix"] = _family(worst_geo, 1e-10, 2000)

    rows = fig3_rows(trend_samples, seed)
    arr = np.asarray(rows)
    trend = monotone_binned_trend(np.sin(arr[:, 0]), arr[:, 1])
    families["purity_trend_monotone"] = {
        "passed": trend["passed"],
        "count": trend_samples,
        **{k: trend[k] for k in ("bin_means", "bin_sems", "monotone_fit")},
    }

    # True concurrence closed form (asserted) and the printed identity
    # (recorded: it is numerically falsified).
    worst_conc = -np.inf
    worst_printed = (-np.inf, None)
    for i in range(1000):
        rng = np.random.default_rng([seed, 60_000_000 + i])
        rx, rz = _random_disc_point(rng)
        r = np.array([rx, 0.0, rz])
        direct = qubitgeo.vectorized_concurrence(r)
        p_sq = rx * rx + rz * rz
        worst_conc = max(worst_conc, abs(direct - (1.0 - p_sq) / (1.0 + p_sq)))
        chk = qubitgeo.concurrence_identity_check(r)
        if chk.residual > worst_printed[0]:
            worst_printed = (chk.residual, {"r": [rx, 0.0, rz],
                                            "formula": chk.formula,
                                            "direct": chk.direct})
    families["vectorized_concurrence_closed_form"] = _family(worst_conc, 1e-10, 1000)
    diagnostics["printed_concurrence_identity"] = {
        "max_residual": worst_printed[0],
        "counterexample": worst_printed[1],
        "falsified": bool(worst_printed[0] > 1e-6),
    }

    # Relative-entropy reverse form: record counterexamples, never assert.
    ce = []
    rho = np.diag([0.75, 0.25]).astype(complex)
    rep = reverse.fidelity_reverse_bound(rho, states.PAULI_X, states.PAULI_Y)
    if rep.diagnostics["second_form_valid"] == 0.0:
        ce.append(
            {
                "rho": matrix_to_pairs(rho),
                "A": matrix_to_pairs(states.PAULI_X),
                "B": matrix_to_pairs(states.PAULI_Y),
                "relative_entropy": rep.diagnostics["relative_entropy"],
                "second_form_value": rep.diagnostics["second_form_value"],
                "target": rep.target,
            }
        )
    for i in range(100):
        rng = np.random.default_rng([seed, 70_000_000 + i])
        d = int(dims[i % len(dims)])
        rho, A, B = random_instance(d, rng)
        rep = reverse.fidelity_reverse_bound(rho, A, B)
        if rep.diagnostics["second_form_valid"] == 0.0 and len(ce) < 5:
            ce.append(
                {
                    "rho": matrix_to_pairs(rho),
                    "A": matrix_to_pairs(A),
                    "B": matrix_to_pairs(B),
                    "relative_entropy": rep.diagnostics["relative_entropy"],
                    "second_form_value": rep.diagnostics["second_form_value"],
                    "target": rep.target,
                }
            )
    diagnostics["relative_entropy_reverse_form"] = {
        "counterexamples": ce,
        "counterexample_count": len(ce),
        "falsified": bool(ce),
    }

    # Multi-observable families.
    worst_pair = worst_signs = -np.inf
    for i in range(pure_samples):
        rng = np.random.default_rng([seed, 80_000_000 + i])
        d = 3 if i % 2 == 0 else 4
        psi = states.random_pure(d, rng)
        A, B, C = (states.random_observable(d, rng) for _ in range(3))
        rep = multiobs.pairwise_sum_bound(psi, A, B, C)
        worst_pair = max(worst_pair, rep.bound_value - rep.target)
        hv = multiobs.hexagon_vectors(psi, A, B, C)
        rho = states.projector(psi)
        for v, (X, Y) in (
            (hv.psi1, (A, B)), (hv.psi2, (B, C)), (hv.psi3, (A, C)),
        ):
            expect = (
                bounds.variance(rho, X)
                + bounds.variance(rho, Y)
                - bounds.commutator_expect(rho, X, Y)
            )
            worst_signs = max(worst_signs, abs(float(np.vdot(v, v).real) - expect))
    families["pairwise_sum_below_total"] = _family(worst_pair, 1e-8, pure_samples)
    families["hexagon_sign_choice_norms"] = _family(worst_signs, 1e-10, pure_samples)

    # Dynamics invariants on the bundled scenarios.
    dyn = {}
    for name, cfg in builtin_scenarios().items():
        dyn[name] = run_scenario(cfg)
    worst_rate_gap = max(
        rep["rate"] - (rep["entropy_rho0"] - math.log(rep["dim"]))
        for rep in dyn.values()
    )
    integrated_ok = all(
        rep["integrated_holds"] for rep in dyn.values() if rep["assumptions_pass"] or rep["degenerate"]
    )
    pointwise_worst = max(
        (rep["pointwise_max_violation"] for rep in dyn.values()
         if rep["pointwise_max_violation"] is not None),
        default=-np.inf,
    )
    families["reverse_rate_below_entropy_gap"] = _family(worst_rate_gap, 1e-9, len(dyn))
    families["integrated_speed_inequality"] = {
        "passed": bool(integrated_ok),
        "count": len(dyn),
    }
    families["pointwise_entropy_inequality"] = _family(pointwise_worst, 1e-6, len(dyn))
    diagnostics["scenarios"] = dyn

    # Protocol: success rate measured, accepted-solution invariants asserted.
    accepted = 0
    worst_proto = -np.inf
    for i in range(protocol_samples):
        rng = np.random.default_rng([seed, 90_000_000 + i])
        r = states.bloch_from_qubit(states.random_mixed(2, rng))
        s = states.bloch_from_qubit(states.random_mixed(2, rng))
        m = rng.normal(size=3)
        m /= np.linalg.norm(m)
        try:
            sol = protocol.construct_partner_observable(r, s, m, starts=32, seed=rng)
        except NoSolution:
            continue
        accepted += 1
        rho = states.qubit_from_bloch(r)
        A = sum(cm * P for cm, P in zip(m, states.PAULIS))
        wit = protocol.fidelity_lower_bound(rho, A, sol)
        worst_proto = max(worst_proto, wit.bound - wit.true_fidelity_sq)
    families["protocol_bound_below_fidelity"] = _family(
        worst_proto if accepted else 0.0, 1e-8, accepted
    )
    diagnostics["protocol_success"] = {
        "attempts": protocol_samples,
        "accepted": accepted,
        "success_rate": accepted / protocol_samples if protocol_samples else 0.0,
    }

    passed = all(f["passed"] for f in families.values())
    return {"passed": passed, "families": families, "diagnostics": diagnostics}


def _random_disc_point(rng) -> tuple[float, float]:
    """Uniform point in the unit disc (real qubit Bloch section)."""
    while True:
        x, z = rng.uniform(-1.0, 1.0, size=2)
        if x * x + z * z <= 1.0:
            return float(x), float(z)


# ---------------------------------------------------------------------------
# Dynamics scenarios
# ---------------------------------------------------------------------------

def builtin_scenarios() -> dict[str, dict]:
    """Bundled generator scenarios used by the audits and the CLI."""
    zero2 = np.zeros((2, 2), dtype=complex)
    lower = np.array([[0, 1], [0, 0]], dtype=complex)
    return {
        "dephasing": {
            "hamiltonian": matrix_to_pairs(zero2),
            "jump_ops": [matrix_to_pairs(states.PAULI_Z)],
            "rates": [1.0],
            "rho0": matrix_to_pairs(states.qubit_from_bloch([0.5, 0.0, 0.0])),
            "tau": 1.0,
            "dt": 0.005,
        },
        "amplitude_damping": {
            "hamiltonian": matrix_to_pairs(zero2),
            "jump_ops": [matrix_to_pairs(lower)],
            "rates": [0.7],
            "rho0": matrix_to_pairs(states.qubit_from_bloch([0.3, 0.2, -0.4])),
            "tau": 1.5,
            "dt": 0.01,
        },
        "rabi": {
            "hamiltonian": matrix_to_pairs(states.PAULI_X),
            "jump_ops": [],
            "rates": [],
            "rho0": matrix_to_pairs(states.qubit_from_bloch([0.0, 0.0, 0.8])),
            "tau": 3.0,
            "dt": 0.01,
        },
        "fixed_point": {
            "hamiltonian": matrix_to_pairs(zero2),
            "jump_ops": [matrix_to_pairs(states.PAULI_Z)],
            "rates": [1.0],
            "rho0": matrix_to_pairs(np.diag([0.75, 0.25]).astype(complex)),
            "tau": 1.0,
            "dt": 0.005,
        },
    }


def scenario_from_config(cfg: dict) -> tuple[np.ndarray, dynamics.LindbladGenerator, float, float]:
    """Parse a scenario block into (rho0, generator, tau, dt)."""
    try:
        H = matrix_from_pairs(cfg["hamiltonian"])
        jump_ops = tuple(matrix_from_pairs(J) for J in cfg.get("jump_ops", []))
        rates = tuple(float(g) for g in cfg.get("rates", []))
        rho0 = matrix_from_pairs(cfg["rho0"])
        tau = float(cfg["tau"])
        dt = float(cfg["dt"])
    except KeyError as exc:
        raise ConfigError(f"scenario config missing key {exc}") from None
    gen = dynamics.LindbladGenerator(hamiltonian=H, jump_ops=jump_ops, rates=rates)
    return rho0, gen, tau, dt


def run_scenario(cfg: dict) -> dict:
    """Evolve a scenario and evaluate the reverse-speed-limit report."""
    rho0, gen, tau, dt = scenario_from_config(cfg)
    traj = dynamics.evolve(rho0, gen, tau, dt)
    rep = dynamics.reverse_qsl_report(traj, rho0)
    return {
        "dim": gen.dim,
        "tau": tau,
        "dt": traj.dt,
        "entropy_rho0": states.von_neumann_entropy(rho0),
        "assumptions_pass": rep.assumptions.passed,
        "monotone_bures": rep.assumptions.monotone_bures,
        "generator_sign": rep.assumptions.generator_sign,
        "degenerate": rep.assumptions.degenerate,
        "branch_sign": rep.branch_sign,
        "rate": rep.rate,
        "integrated_lhs": rep.integrated_lhs,
        "integrated_rhs": rep.integrated_rhs,
        "integrated_margin": rep.integrated_lhs - rep.integrated_rhs,
        "integrated_holds": rep.integrated_holds,
        "pointwise_checked": rep.pointwise.checked,
        "pointwise_max_violation": rep.pointwise.max_violation,
        "pointwise_reason": rep.pointwise.reason,
        "tau_bound": rep.tau_bound,
        "tau_bound_valid": rep.tau_bound_valid,
        "reason": rep.reason,
        "final_bures": float(traj.bures[-1]),
        "projection_events": len(traj.drift_log),
    }


# ---------------------------------------------------------------------------
# Protocol front end
# ---------------------------------------------------------------------------

def protocol_report(r, s, m_hat, seed: int = 0, starts: int = 32) -> dict:
    """Solve the partner-observable problem and emit the fidelity witness."""
    r = np.asarray(r, dtype=float)
    s = np.asarray(s, dtype=float)
    m_hat = np.asarray(m_hat, dtype=float)
    n = np.linalg.norm(m_hat)
    if n < 1e-12:
        raise ConfigError("m direction must be nonzero")
    m_hat = m_hat / n
    try:
        sol = protocol.construct_partner_observable(r, s, m_hat, starts=starts, seed=seed)
    except NoSolution as exc:
        return {"solved": False, "reason": str(exc)}
    rho = states.qubit_from_bloch(r)
    A = sum(c * P for c, P in zip(m_hat, states.PAULIS))
    wit = protocol.fidelity_lower_bound(rho, A, sol)
    return {
        "solved": True,
        "lam": sol.lam,
        "n_hat": sol.n_hat.tolist(),
        "residual": sol.residual,
        "matched_sign": sol.matched_sign,
        "fidelity_bound": wit.bound,
        "true_fidelity_sq": wit.true_fidelity_sq,
        "gap": wit.true_fidelity_sq - wit.bound,
        "lam_k": wit.lam_k,
    }


def dump_json(path: str | None, payload: dict) -> str:
    """Serialize a report; write to path when given, always return text."""
    text = json.dumps(payload, indent=2, sort_keys=True, default=_json_default)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    raise TypeError(f"not JSON serializable: {type(obj)}")
