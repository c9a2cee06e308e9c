"""Vector subdivision schemes: analysis, design and exact evaluation.

The main entry points are re-exported here; see the submodules for the
full interfaces.
"""
__version__ = "0.1.0"

from ._kernels import BACKEND
from .errors import (AmbiguousEigenvectorError, AnalysisError, DegenerateInputError,
                     EigenvalueNotSimpleError, InfeasibleDesignError, NormalizationFailure,
                     ResourceLimitError, SingularRecursionError)
from .scalar import GaussianRational, format_scalar, to_exact
from .sequence import MatrixSequence, convolve, delta, scalar_sequence, vector_sequence
from .jets import FilterJet, Jet, jet_mul, jet_of
from .masks import (Mask, Symmetry, classify_scheme, design_mask, matching_filter_moments, spectral_report,
                    sum_rule_order, verify_matching_filter)
from .engine import (cascade, dyadic_values, iterate, limit_function_samples, phi_integer_samples,
                     transition_matrix)
from .normal_form import StronglyInvertible, build_U1, similarity_transform
from .smoothness import generator_basis, rho_estimate, sm_report
from .convergence import convergence_verdict, error_curve, fit_rate
from .corpus import load_example, spline_eval
from .maskio import dumps_mask, load_mask, loads_mask

__all__ = [
    "__version__", "BACKEND",
    "AnalysisError", "AmbiguousEigenvectorError", "DegenerateInputError", "EigenvalueNotSimpleError",
    "InfeasibleDesignError", "NormalizationFailure", "ResourceLimitError", "SingularRecursionError",
    "GaussianRational", "format_scalar", "to_exact",
    "MatrixSequence", "convolve", "delta", "scalar_sequence", "vector_sequence",
    "FilterJet", "Jet", "jet_mul", "jet_of",
    "Mask", "Symmetry", "classify_scheme", "design_mask", "matching_filter_moments", "spectral_report",
    "sum_rule_order", "verify_matching_filter",
    "cascade", "dyadic_values", "iterate", "limit_function_samples", "phi_integer_samples",
    "transition_matrix",
    "StronglyInvertible", "build_U1", "similarity_transform",
    "generator_basis", "rho_estimate", "sm_report",
    "convergence_verdict", "error_curve", "fit_rate",
    "load_example", "spline_eval",
    "dumps_mask", "load_mask", "loads_mask",
]
