"""
Okounkov Bodies: exact Newton-Okounkov body computations for projective
spaces and toric varieties.
"""
from .flags import CoordinateFlag, CurveFlag, ToricVertexFlag, flag_from_config, validate_flag
from .linalg import QMatrix, QVector, gauss_solve, in_convex_hull, rank
from .models import ProjectiveModel, ToricModel, hilbert_dim, model_from_config, restriction_degree, restriction_matrix
from .okounkov import (
    body_approx, decompose, lemma_witness, predicted_body, scaling_check, valuation_axiom_check,
    verify_theorem, volume_vs_hilbert,
)
from .polyring import CurveParam, MultiPoly, parse_poly, pullback
from .polytope import VPolytope, convex_hull, volume
from .utils import (
    ConfigError, ContractViolation, EffectivityError, HypothesisMismatch, InternalGuardError,
    OkounkovError, OutsideSimplexError,
)
from .valuation import SemigroupSample, enumerate_semigroup, valuation, valuation_image
