"""quvar: variance-based uncertainty bounds and their numerical audits.

Dense linear-algebra kernels (matops), quantum states and metrics
(states), forward sum-uncertainty bounds (bounds), reverse bounds
(reverse), Lindblad dynamics with the reverse speed limit (dynamics), the
qubit fidelity-witness protocol (protocol), qubit closed forms (qubitgeo),
three-observable constructions (multiobs), and the experiment harness
behind the ``quvar`` command line (experiments, cli).
"""

from . import (  # noqa: F401
    bounds,
    cli,
    dynamics,
    experiments,
    matops,
    multiobs,
    protocol,
    qubitgeo,
    reverse,
    states,
)
from .bounds import (  # noqa: F401
    BoundReport,
    UncertaintyMatrix,
    bauer_householder_bound,
    bauer_householder_optimized,
    canonical_uncertainty_matrix,
    peierls_bogoliubov_bound,
    robertson_sum_bound,
    uncertainty_equality_residual,
    variance,
    variance_sum,
    vectorized_projection_bound,
)
from .dynamics import LindbladGenerator, Trajectory, evolve, lindblad_apply  # noqa: F401
from .errors import QuvarError  # noqa: F401
from .reverse import ReverseReport, fidelity_reverse_bound  # noqa: F401
from .states import (  # noqa: F401
    bures_angle,
    fidelity,
    purity,
    random_mixed,
    random_pure,
    relative_entropy,
    trace_distance,
    von_neumann_entropy,
)

__version__ = "0.1.0"
