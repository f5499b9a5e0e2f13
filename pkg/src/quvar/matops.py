"""Dense complex-matrix kernels.

Hermitian eigendecomposition, spectral matrix functions, operator norms and
the numerical radius, for small dense matrices (desk scale, dimension up to
a few dozen). Everything here is a pure function of immutable inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, NotHermitian

#: Shared absolute tolerance for matrix identities. For matrices with norm
#: above 1 the effective tolerance scales with the norm (see scaled_tol).
TOL = 1e-10

#: Eigenvalues of nominally positive-semidefinite input lying in
#: (-CLAMP_TOL, 0) are numerical noise and get clamped to zero; anything
#: beyond is a genuine domain violation.
CLAMP_TOL = 1e-12


def dagger(M: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(M).conj().T


def frobenius_norm(M: np.ndarray) -> float:
    return float(np.linalg.norm(np.asarray(M)))


def scaled_tol(M: np.ndarray, tol: float = TOL) -> float:
    """Absolute tolerance, promoted to relative once the norm exceeds 1."""
    return tol * max(1.0, frobenius_norm(M))


def hermitian_asymmetry(M: np.ndarray) -> float:
    """Largest entrywise deviation of M from its conjugate transpose."""
    M = np.asarray(M)
    return float(np.max(np.abs(M - dagger(M)))) if M.size else 0.0


def is_hermitian(M: np.ndarray, tol: float = TOL) -> bool:
    return hermitian_asymmetry(M) <= tol * max(1.0, frobenius_norm(M))


def require_hermitian(M: np.ndarray, tol: float = TOL, what: str = "matrix") -> np.ndarray:
    """Return M as a complex array, raising NotHermitian if it is not."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotHermitian(f"{what} must be square, got shape {M.shape}")
    asym = hermitian_asymmetry(M)
    if asym > tol * max(1.0, frobenius_norm(M)):
        raise NotHermitian(f"{what} asymmetry {asym:.3e} exceeds tolerance")
    return M


@dataclass(frozen=True)
class EigenSystem:
    """Eigendecomposition of a Hermitian matrix.

    eigenvalues are real and ascending; eigenvectors are orthonormal columns,
    eigenvectors[:, k] belonging to eigenvalues[k].
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ dagger(V)


def herm_eig(H: np.ndarray, tol: float = TOL) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix, ascending eigenvalues."""
    H = require_hermitian(H, tol=tol, what="eigendecomposition input")
    w, V = np.linalg.eigh(H)
    return EigenSystem(eigenvalues=w, eigenvectors=V)


def clamp_psd_eigenvalues(w: np.ndarray, clamp: float = CLAMP_TOL) -> np.ndarray:
    """Zero out tiny negative eigenvalues of a nominally PSD spectrum."""
    w = np.asarray(w, dtype=float).copy()
    w[(w < 0) & (w > -clamp)] = 0.0
    return w


def herm_fn(
    H: np.ndarray,
    fn: Callable[[np.ndarray], np.ndarray],
    domain: tuple[float | None, float | None] | None = None,
    clamp: float = CLAMP_TOL,
) -> np.ndarray:
    """Apply a real scalar function to a Hermitian matrix spectrally.

    Returns V fn(w) V^dagger for H = V diag(w) V^dagger. If ``domain`` is
    given as (lo, hi), eigenvalues within ``clamp`` of the boundary are
    clamped onto it; eigenvalues beyond that raise DomainError, as do
    non-finite function values (e.g. log of an exact zero).
    """
    sys = herm_eig(H)
    w = sys.eigenvalues.copy()
    if domain is not None:
        lo, hi = domain
        if lo is not None:
            bad = w < lo - clamp
            if np.any(bad):
                raise DomainError(
                    f"eigenvalue {w[bad].min():.3e} below domain minimum {lo}"
                )
            w = np.maximum(w, lo)
        if hi is not None:
            bad = w > hi + clamp
            if np.any(bad):
                raise DomainError(
                    f"eigenvalue {w[bad].max():.3e} above domain maximum {hi}"
                )
            w = np.minimum(w, hi)
    with np.errstate(all="ignore"):
        fw = np.asarray(fn(w), dtype=float)
    if not np.all(np.isfinite(fw)):
        raise DomainError("function returned non-finite values on the spectrum")
    V = sys.eigenvectors
    out = (V * fw) @ dagger(V)
    return 0.5 * (out + dagger(out))


def herm_exp(H: np.ndarray) -> np.ndarray:
    """exp(H) for Hermitian H."""
    return herm_fn(H, np.exp)


def psd_sqrt(H: np.ndarray) -> np.ndarray:
    """Square root of a Hermitian PSD matrix (tiny negatives clamped)."""
    sys = herm_eig(H)
    w = clamp_psd_eigenvalues(sys.eigenvalues)
    if np.any(w < 0):
        raise DomainError(f"matrix is not PSD: min eigenvalue {w.min():.3e}")
    V = sys.eigenvectors
    out = (V * np.sqrt(w)) @ dagger(V)
    return 0.5 * (out + dagger(out))


def psd_power(H: np.ndarray, p: float) -> np.ndarray:
    """H**p for Hermitian PSD H and real p >= 0."""
    sys = herm_eig(H)
    w = clamp_psd_eigenvalues(sys.eigenvalues)
    if np.any(w < 0):
        raise DomainError(f"matrix is not PSD: min eigenvalue {w.min():.3e}")
    V = sys.eigenvectors
    out = (V * np.power(w, p)) @ dagger(V)
    return 0.5 * (out + dagger(out))


def op_norm(T: np.ndarray) -> float:
    """Operator (spectral) norm: largest singular value of T."""
    T = np.asarray(T, dtype=complex)
    if T.size == 0:
        return 0.0
    w = np.linalg.eigvalsh(dagger(T) @ T)
    return float(np.sqrt(max(w[-1], 0.0)))


def _golden_max(f: Callable[[float], float], a: float, b: float, xtol: float) -> tuple[float, float]:
    """Golden-section maximization of a unimodal f on [a, b]."""
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > xtol:
        if fc < fd:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
        else:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
    x = 0.5 * (a + b)
    return x, f(x)


def numerical_radius(T: np.ndarray, samples: int = 512, xtol: float = 1e-8) -> float:
    """Numerical radius w(T): largest modulus of the field of values.

    Evaluates the largest eigenvalue of the Hermitian part of
    exp(i*theta) T on a uniform theta grid over [0, 2*pi) and refines the
    best cell by golden-section search (the objective is smooth and
    periodic). Hermitian inputs short-circuit to the spectral radius, which
    is exact.
    """
    T = np.asarray(T, dtype=complex)
    if samples < 64:
        raise ValueError(f"samples must be >= 64, got {samples}")
    if is_hermitian(T):
        return float(np.max(np.abs(np.linalg.eigvalsh(T)))) if T.size else 0.0
    Td = dagger(T)
    thetas = np.linspace(0.0, 2.0 * np.pi, samples, endpoint=False)
    phases = np.exp(1j * thetas)
    stack = 0.5 * (phases[:, None, None] * T + phases.conj()[:, None, None] * Td)
    vals = np.linalg.eigvalsh(stack)[:, -1]
    k = int(np.argmax(vals))
    best = float(vals[k])

    def f(theta: float) -> float:
        z = np.exp(1j * theta)
        return float(np.linalg.eigvalsh(0.5 * (z * T + z.conjugate() * Td))[-1])

    step = 2.0 * np.pi / samples
    _, refined = _golden_max(f, thetas[k] - step, thetas[k] + step, xtol)
    return max(best, refined)
