"""gammahg: exact hypergeometric local-system data from gamma vectors.

The package turns a vector of nonzero integers summing to zero into the
attached hypergeometric data (parameters, rank, Hodge numbers), a toric
model of the associated family of affine hypersurfaces, the cohomology of
the fibre complements with its filtrations and Gauss-Manin action, minimal
annihilating differential operators, monodromy in Levelt normal form,
power-series witnesses, and the covering data used for irreducibility of
quadrilateral families.  All arithmetic is exact over Q and Q(t).
"""

__version__ = "0.1.0"

from .errors import GammaHGError, TrivialSystem
from .gamma import (
    FamilyParameter,
    GammaVector,
    HGParams,
    family_parameter,
    hg_params,
    make_gamma,
    parse_gamma,
    primify,
    rank,
    reduce,
    volume,
)
from .hodge import delta_n, hodge_numbers, hodge_polynomial, m_plus_minus
from .ore import (
    OreOperator,
    apparent_singularity_probe,
    build_gkz_operator,
    build_hypergeometric,
    cancel_parameters,
    local_exponents_at_zero,
    solve_eta,
)
from .polys import Poly, RatFun, cyclotomic
from .toric import (
    ToricModel,
    build_model,
    hessian_determinant,
    import_model,
    newton_polytope,
    quasi_regularity_check,
    singular_fiber_criterion,
    singular_point,
    translate_model,
)

__all__ = [
    "FamilyParameter",
    "GammaHGError",
    "GammaVector",
    "HGParams",
    "OreOperator",
    "Poly",
    "RatFun",
    "ToricModel",
    "TrivialSystem",
    "apparent_singularity_probe",
    "build_gkz_operator",
    "build_hypergeometric",
    "build_model",
    "cancel_parameters",
    "cyclotomic",
    "delta_n",
    "family_parameter",
    "hessian_determinant",
    "hg_params",
    "hodge_numbers",
    "hodge_polynomial",
    "import_model",
    "local_exponents_at_zero",
    "m_plus_minus",
    "make_gamma",
    "newton_polytope",
    "parse_gamma",
    "primify",
    "quasi_regularity_check",
    "rank",
    "reduce",
    "singular_fiber_criterion",
    "singular_point",
    "solve_eta",
    "translate_model",
    "volume",
]
