"""Exact verification of two-Galois-point plane models for two curve families.

The library constructs, over explicit finite fields, the automorphism
subgroups, birational maps and plane embeddings attached to the curve
families y^m = x^q + x (m | q+1) and y^(q^r+1) = x^q + x, and certifies
the existence and position of their two Galois points by exact arithmetic:
function-field degrees are computed by two independent methods, orders of
vanishing come from truncated branch parametrizations, and every claim is
re-verified rather than assumed.
"""

from .fields import (FieldCtx, FieldElem, FieldHom, build_field, embed,
                     find_roots, solve_additive)
from .constants import FamilyConstants, make_family_constants
from .poly import BiPoly, TernaryForm, UniPoly, homogenize, resultant, squarefree_part
from .curves import PlaneCurve, ProjPoint, infinity_point, make_curve, singular_locus
from .branches import (BranchExpansion, Place, branch_expand,
                       intersection_multiplicity, valuation)
from .funcfield import FFElem, extension_degree, normal_form, verify_fixed_field
from .ratmaps import (AutGroup, RatMap, conjugate, group_intersection,
                      lemma1_chain, make_G1, make_alpha, make_beta, make_gamma,
                      make_gb, orbit_points)
from .engine import (EmbeddingResult, GaloisCertificate, build_embedding,
                     classify_point, galois_certify, proposition_exclusion_suite,
                     ramification_index)
from .runner import RunReport, run_selector

__version__ = "1.0.0"
