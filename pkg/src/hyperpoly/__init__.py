"""Exact and numerical invariants of star-shaped quiver varieties."""

from .betti import (
    PoincarePoly,
    dimensions,
    genericity_check,
    poincare,
    poincare_rank2,
    recursion_residual,
)
from .errors import (
    DegenerateDiscriminantError,
    DegenerateSampleError,
    DegreeOverflowError,
    LevelSetError,
    MomentMapError,
    NonConvergenceError,
    NotMinimalOrbitError,
    PoleEvaluationError,
    TrivialFiberError,
    ValidationError,
    ZeroMatrixError,
)
from .exact import DensePoly, GaussianRational, PolyMatrix, TruncatedSeries
from .hitchin import (
    BasePoint,
    BracketObservable,
    HiggsField,
    commutation_report,
    delta_check,
    higgs_eval,
    hitchin_map,
    jacobian_rank,
    observable_grad,
    poisson_bracket,
    residues,
)
from .quiver import (
    QuiverPoint,
    exact_point_from_x,
    min_orbit_check,
    min_orbit_factor,
    moment_residual,
    polygon_edges,
    sample_exact,
    solve_real,
)
from .spectral import (
    CharPoly,
    TwistedHiggs,
    local_models,
    order_check,
    smoothness_probe,
    spectral_charpoly,
    trace_consistency,
    twist,
)

__all__ = [
    "BasePoint",
    "BracketObservable",
    "CharPoly",
    "DegenerateDiscriminantError",
    "DegenerateSampleError",
    "DegreeOverflowError",
    "DensePoly",
    "GaussianRational",
    "HiggsField",
    "LevelSetError",
    "MomentMapError",
    "NonConvergenceError",
    "NotMinimalOrbitError",
    "PoincarePoly",
    "PoleEvaluationError",
    "PolyMatrix",
    "QuiverPoint",
    "TrivialFiberError",
    "TruncatedSeries",
    "TwistedHiggs",
    "ValidationError",
    "ZeroMatrixError",
    "commutation_report",
    "delta_check",
    "dimensions",
    "exact_point_from_x",
    "genericity_check",
    "higgs_eval",
    "hitchin_map",
    "jacobian_rank",
    "local_models",
    "min_orbit_check",
    "min_orbit_factor",
    "moment_residual",
    "observable_grad",
    "order_check",
    "poincare",
    "poincare_rank2",
    "poisson_bracket",
    "polygon_edges",
    "recursion_residual",
    "residues",
    "sample_exact",
    "smoothness_probe",
    "solve_real",
    "spectral_charpoly",
    "trace_consistency",
    "twist",
]

__version__ = "0.1.0"
