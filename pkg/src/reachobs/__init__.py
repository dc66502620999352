"""Exact recovery of state-space triples from reachability/observability pairs.

Decide whether matrices V (n x p*k) and W (q*m x n) arise as the
k-step reachability matrix and m-step observability matrix of a shared
triple (A, B, C), and parametrize every compatible triple.  All core
arithmetic is exact over the rationals; :mod:`reachobs.approx` mirrors
the checks for floating-point data.
"""

from ._backend import kernel_backend
from .exact import (
    DimensionError,
    Mat,
    RrefResult,
    Scalar,
    g1_inverse,
    is_g1_inverse,
    kernel_basis,
    rank,
    rref,
)
from .pairs import (
    InfeasiblePairError,
    InvalidGInverseError,
    PairCertificate,
    PairProblem,
    SolutionFamily,
    has_common_solution,
    particular_solution,
    particular_solution_alt,
    solution_family,
)
from .realization import (
    FeasibilityReport,
    InfeasibleRealizationError,
    RealizationProblem,
    Triple,
    Truncations,
    check_feasibility,
    observability_matrix,
    reachability_matrix,
    realize,
    realize_family,
    realize_observability_only,
    realize_reachability_only,
    truncations,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "kernel_backend",
    "DimensionError",
    "Mat",
    "RrefResult",
    "Scalar",
    "g1_inverse",
    "is_g1_inverse",
    "kernel_basis",
    "rank",
    "rref",
    "InfeasiblePairError",
    "InvalidGInverseError",
    "PairCertificate",
    "PairProblem",
    "SolutionFamily",
    "has_common_solution",
    "particular_solution",
    "particular_solution_alt",
    "solution_family",
    "FeasibilityReport",
    "InfeasibleRealizationError",
    "RealizationProblem",
    "Triple",
    "Truncations",
    "check_feasibility",
    "observability_matrix",
    "reachability_matrix",
    "realize",
    "realize_family",
    "realize_observability_only",
    "realize_reachability_only",
    "truncations",
]
