"""Quantum states: validation, random generation, metrics, vectorization.

States are plain numpy arrays: a state vector is a complex unit vector, a
density matrix is a trace-one PSD Hermitian complex matrix. Validators
raise rather than silently repairing, except for eigenvalue noise in
(-1e-10, 0) which is accepted by contract.
"""

from __future__ import annotations

import numpy as np

from . import matops
from .errors import DimensionError, QuvarError

#: Trace-one / Hermiticity / normalization tolerance for state validation.
STATE_TOL = 1e-10

#: Eigenvalues of a state below this cutoff count as outside its support
#: (used by the relative entropy); below typical eigensolver noise.
SUPPORT_CUTOFF = 1e-12

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)


def check_state_vector(psi: np.ndarray, tol: float = STATE_TOL) -> np.ndarray:
    """Validate a unit-norm complex vector and return it as such."""
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1:
        raise DimensionError(f"state vector must be 1-D, got shape {psi.shape}")
    n = np.linalg.norm(psi)
    if abs(n - 1.0) > tol:
        raise QuvarError(f"state vector norm {n} deviates from 1 beyond {tol}")
    return psi


def check_density_matrix(rho: np.ndarray, tol: float = STATE_TOL) -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity of a density matrix."""
    rho = matops.require_hermitian(rho, tol=tol, what="density matrix")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > tol:
        raise QuvarError(f"density matrix trace {tr} deviates from 1 beyond {tol}")
    w = np.linalg.eigvalsh(rho)
    if w[0] < -tol:
        raise QuvarError(f"density matrix has negative eigenvalue {w[0]:.3e}")
    return rho


def projector(psi: np.ndarray) -> np.ndarray:
    """Rank-one density matrix |psi><psi|."""
    psi = check_state_vector(psi)
    return np.outer(psi, psi.conj())


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_pure(dim: int, seed) -> np.ndarray:
    """Haar-distributed pure state: normalized complex Gaussian vector."""
    if dim < 2:
        raise DimensionError(f"dim must be >= 2, got {dim}")
    rng = _rng(seed)
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_mixed(dim: int, seed) -> np.ndarray:
    """Hilbert-Schmidt-random density matrix: G G^dag / tr(G G^dag)."""
    if dim < 2:
        raise DimensionError(f"dim must be >= 2, got {dim}")
    rng = _rng(seed)
    G = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    W = G @ matops.dagger(G)
    return W / np.trace(W).real


def random_observable(dim: int, seed) -> np.ndarray:
    """GUE-style random Hermitian matrix (Gaussian entries, hermitized)."""
    rng = _rng(seed)
    G = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (G + matops.dagger(G))


def herm_sqrt(rho: np.ndarray) -> np.ndarray:
    """Hermitian PSD square root of a density matrix.

    Diagonalize, take nonnegative square roots of the populations, rotate
    back. Eigenvalue noise in (-1e-12, 0) is clamped to zero.
    """
    rho = check_density_matrix(rho)
    return matops.psd_sqrt(rho)


def vectorize(M: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization |M>.

    Satisfies |AB> = (I (x) A)|B> and <A|B> = Tr(A^dag B).
    """
    return np.asarray(M, dtype=complex).reshape(-1, order="F")


def unvectorize(v: np.ndarray, dim: int) -> np.ndarray:
    """Inverse of vectorize for a dim x dim matrix."""
    return np.asarray(v, dtype=complex).reshape((dim, dim), order="F")


def purity(rho: np.ndarray) -> float:
    """Tr(rho^2)."""
    rho = check_density_matrix(rho)
    return float(np.trace(rho @ rho).real)


def von_neumann_entropy(rho: np.ndarray) -> float:
    """-Tr(rho ln rho), natural logarithm."""
    rho = check_density_matrix(rho)
    w = matops.clamp_psd_eigenvalues(np.linalg.eigvalsh(rho), clamp=STATE_TOL)
    w = w[w > 0.0]
    return float(-np.sum(w * np.log(w)))


def fidelity(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)), in [0, 1].

    Computed as the trace norm of sqrt(sigma) sqrt(rho) (sum of singular
    values), which is algebraically identical and numerically stable.
    """
    rho = check_density_matrix(rho)
    sigma = check_density_matrix(sigma)
    if rho.shape != sigma.shape:
        raise DimensionError("states have different dimensions")
    s = np.linalg.svd(matops.psd_sqrt(sigma) @ matops.psd_sqrt(rho), compute_uv=False)
    return float(min(np.sum(s), 1.0))


def trace_distance(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Half the trace norm of rho - sigma."""
    rho = check_density_matrix(rho)
    sigma = check_density_matrix(sigma)
    if rho.shape != sigma.shape:
        raise DimensionError("states have different dimensions")
    w = np.linalg.eigvalsh(rho - sigma)
    return float(0.5 * np.sum(np.abs(w)))


def relative_entropy(rho: np.ndarray, sigma: np.ndarray, cutoff: float = SUPPORT_CUTOFF) -> float:
    """S(rho || sigma) = Tr rho (ln rho - ln sigma), natural logarithm.

    Returns +inf when the support of rho is not contained in the support of
    sigma (sigma eigenvalues below ``cutoff`` count as kernel).
    """
    rho = check_density_matrix(rho)
    sigma = check_density_matrix(sigma)
    if rho.shape != sigma.shape:
        raise DimensionError("states have different dimensions")
    ws, Vs = np.linalg.eigh(sigma)
    kernel = Vs[:, ws <= cutoff]
    if kernel.size and np.trace(matops.dagger(kernel) @ rho @ kernel).real > cutoff:
        return float("inf")
    wr = matops.clamp_psd_eigenvalues(np.linalg.eigvalsh(rho), clamp=STATE_TOL)
    ent = float(np.sum(wr[wr > 0.0] * np.log(wr[wr > 0.0])))
    ws_supp = np.where(ws > cutoff, ws, 1.0)  # kernel carries no rho weight
    log_sigma = (Vs * np.log(ws_supp)) @ matops.dagger(Vs)
    return float(ent - np.trace(rho @ log_sigma).real)


def bures_angle(rho: np.ndarray, sigma: np.ndarray) -> float:
    """arccos of the fidelity, in [0, pi/2]."""
    return float(np.arccos(np.clip(fidelity(rho, sigma), 0.0, 1.0)))


def bloch_from_qubit(rho: np.ndarray) -> np.ndarray:
    """Bloch vector (r_x, r_y, r_z) of a qubit state, r_i = Tr(rho sigma_i)."""
    rho = check_density_matrix(rho)
    if rho.shape != (2, 2):
        raise DimensionError(f"Bloch decomposition needs a qubit, got shape {rho.shape}")
    return np.array([np.trace(rho @ P).real for P in PAULIS])


def qubit_from_bloch(r: np.ndarray) -> np.ndarray:
    """Qubit density matrix (I + r . sigma) / 2 for |r| <= 1."""
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise DimensionError(f"Bloch vector must have 3 components, got {r.shape}")
    if np.linalg.norm(r) > 1.0 + STATE_TOL:
        raise QuvarError(f"Bloch vector length {np.linalg.norm(r)} exceeds 1")
    rho = 0.5 * (np.eye(2, dtype=complex) + sum(c * P for c, P in zip(r, PAULIS)))
    return rho
