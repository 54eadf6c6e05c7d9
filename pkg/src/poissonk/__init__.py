"""Exact K-theory and cohomology computations on Poisson surfaces."""
from .cohomology import (CohClass, SurfaceModel, blow_up, build_surface, cup, integrate,
                         load_surface, make_surface, ruled_over_curve, todd)
from .diagonal import (DiagonalDecomposition, ModuliContext, assemble_diagonal_kclass,
                       base_diagonal_decomposition, blowup_diagonal_step, chern_expand,
                       formal_moduli_context, generator_report, moduli_context,
                       top_chern_expand, twist_invariance, verify_dual)
from .errors import IntegralityError, ValidationError
from .ktheory import (KClass, dual, euler_chi, expected_dim, from_ch, from_chern,
                      gram_and_dual_basis, hilbert_poly, kcup, line_bundle, mukai_asymmetry,
                      mukai_pair,
                      primitive, stability_compare, universal_obstruction)
from .spectral import CurveKClass, curve_chi, projection_formula_check, ruling_pushforward

__version__ = "0.1.0"
