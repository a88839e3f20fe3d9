"""Exact verification of probabilistic normed spaces over the rationals.

Distance distribution functions are left-continuous rational step
functions, so every axiom check below is an exact comparison of Fractions.
"""
from .ddf import (DDF, EPS0, ArchFamily, FiniteStep, HohleFamily, UnitStep, equal_everywhere, levy_distance,
                  levy_to_eps0, pointwise_equal, pointwise_leq)
from .metrize import (ARCHIMEDEAN, HOHLE, LEVEL_INF, FilterBase, Grids, HypothesisError, InsufficientDepth,
                      MetrizationResult, Radii, compute_N0, construct_nu, n4_case_audit, run_full_verification,
                      verify_filter_equivalence)
from .report import CheckRecord, VerificationReport
from .spaces import Gauge, PMSpaceSpec, PNSpaceSpec, ProbNorm, Vector, embed_metric, embed_normed, sample_vectors
from .tnorm import (Drastic, HalfProductJump, Lukasiewicz, Min, Product, TConorm, TNorm, by_name,
                    check_tnorm_axioms, custom, from_table)
from .triangle import TriangleFn, tau_apply, tau_eval, tau_star_apply, tau_star_eval

__version__ = "0.1.0"

__all__ = [
    "DDF", "EPS0", "ArchFamily", "FiniteStep", "HohleFamily", "UnitStep", "equal_everywhere",
    "levy_distance", "levy_to_eps0", "pointwise_equal", "pointwise_leq",
    "ARCHIMEDEAN", "HOHLE", "LEVEL_INF", "FilterBase", "Grids", "HypothesisError", "InsufficientDepth",
    "MetrizationResult", "Radii", "compute_N0", "construct_nu", "n4_case_audit", "run_full_verification",
    "verify_filter_equivalence",
    "CheckRecord", "VerificationReport",
    "Gauge", "PMSpaceSpec", "PNSpaceSpec", "ProbNorm", "Vector", "embed_metric", "embed_normed",
    "sample_vectors",
    "Drastic", "HalfProductJump", "Lukasiewicz", "Min", "Product", "TConorm", "TNorm", "by_name",
    "check_tnorm_axioms", "custom", "from_table",
    "TriangleFn", "tau_apply", "tau_eval", "tau_star_apply", "tau_star_eval",
]
