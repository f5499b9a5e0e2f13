"""Tour of the forward sum-uncertainty bounds on small hand-picked states.

Walks the lower bounds from weakest to strongest on a polarized qubit and
shows the saturating choices for the projection and angle bounds.
"""

import numpy as np

from quvar import bounds, states
from quvar.states import PAULI_X, PAULI_Y

rho = np.diag([0.75, 0.25]).astype(complex)
print("state: diag(3/4, 1/4), observables: sigma_x, sigma_y")
total = bounds.variance_sum(rho, PAULI_X, PAULI_Y)
print(f"variance sum          : {total:.6f}")

rob = bounds.robertson_sum_bound(rho, PAULI_X, PAULI_Y)
print(f"robertson lower bound : {rob.bound_value:.6f}")

pb = bounds.peierls_bogoliubov_bound(rho, PAULI_X, PAULI_Y)
d = pb.diagnostics
print(
    f"entropy lower bound   : {pb.bound_value:.6f}"
    f"  (= commutator {d['commutator']:.4f} + entropy {d['entropy']:.4f}"
    f" - log partition {d['log_partition']:.4f})"
)

proj = bounds.vectorized_projection_bound(rho, PAULI_X, PAULI_Y)
print(f"projection bound      : {proj.bound_value:.6f}  (optimal perp, saturates)")

# the same projection bound with an unoptimized orthogonal direction
perp = bounds.perp_from_hermitian(rho, PAULI_X)
loose = bounds.vectorized_projection_bound(rho, PAULI_X, PAULI_Y, perp=perp)
print(f"projection (restricted perp): {loose.bound_value:.6f}")

# angle bound on a pure state: phi = psi saturates, a random phi does not
psi = states.random_pure(3, 7)
A = states.random_observable(3, 8)
B = states.random_observable(3, 9)
tight = bounds.bauer_householder_bound(psi, A, B, psi)
print(f"\npure qutrit angle bound at phi = psi : {tight.bound_value:.6f}"
      f"  (variance sum {tight.target:.6f})")
best = bounds.bauer_householder_optimized(psi, A, B, trials=32, seed=0, include_self=False)
print(f"best over 32 random phi              : {best.bound_value:.6f}")

K = bounds.canonical_uncertainty_matrix(rho, PAULI_X, PAULI_Y)
print(f"\ncanonical K sign {K.sign:+d}, eigenvalues {np.linalg.eigvalsh(K.matrix)}")
print(f"Tr(rho K) = {np.trace(rho @ K.matrix).real:.6f}"
      f" = variance sum - |<[A,B]>| = {total - rob.bound_value:.6f}")
