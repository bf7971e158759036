"""Geometry of zeros and critical points of complex polynomials.

Library + CLI covering critical-circle metrics, LP feasibility
certificates for extensibility, second-order counterexample families,
extremal classifications at the origin, normal-matrix compressions, and
majorization characterizations of critical points.
"""

from .poly import Polynomial, RootSet, RootFindingError
from .metrics import (
    CriticalCircle,
    alpha_distance,
    delta_distance,
    directed_hausdorff,
    smale_ratio,
)
from .lp import (
    FeasibilityCertificate,
    Verdict,
    eq_nonneg_feasibility,
    strict_feasibility,
)

__version__ = "0.1.0"

__all__ = [
    "Polynomial",
    "RootSet",
    "RootFindingError",
    "CriticalCircle",
    "alpha_distance",
    "delta_distance",
    "directed_hausdorff",
    "smale_ratio",
    "FeasibilityCertificate",
    "Verdict",
    "eq_nonneg_feasibility",
    "strict_feasibility",
    "__version__",
]
