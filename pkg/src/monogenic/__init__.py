"""Exact arithmetic toolkit for monogenic polynomial families.

Builds prime-degree polynomials whose monogenicity is certified through
discriminant factorization and Eisenstein criteria, and proves
non-monogenicity of a Stirling-coefficient family with Newton polygons.
"""

from .arith import (
    DEFAULT_EFFORT,
    Effort,
    FactoredInteger,
    SquarefreeStatus,
    factorize,
    find_prime_in_class,
    is_prime,
    is_squarefree,
    padic_valuation,
    primes_up_to,
    squarefree_status,
    squarefull_split,
)
from .construction import (
    ConstructionParams,
    InvalidParametersError,
    MonogenicityCertificate,
    build_construction,
    build_f_product,
    certify_monogenic,
    compute_cd,
    density_constant,
    discriminant_identity_check,
    local_solubility_witness,
    search_admissible_prime,
    validate_params,
)
from .newton import (
    NewtonPolygon,
    certify_non_monogenic,
    jk_bound,
    lower_hull,
    ore_bound,
    phi_index,
    phi_newton_polygon,
)
from .poly import IntegerPolynomial, linear_product, parse_polynomial, phi_expand
from .resultants import discriminant, resultant
from .stirling import (
    bernoulli,
    is_regular_prime,
    stirling_family_polynomial,
    stirling_table,
    verify_stirling_valuations,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_EFFORT",
    "Effort",
    "FactoredInteger",
    "SquarefreeStatus",
    "factorize",
    "find_prime_in_class",
    "is_prime",
    "is_squarefree",
    "padic_valuation",
    "primes_up_to",
    "squarefree_status",
    "squarefull_split",
    "ConstructionParams",
    "InvalidParametersError",
    "MonogenicityCertificate",
    "build_construction",
    "build_f_product",
    "certify_monogenic",
    "compute_cd",
    "density_constant",
    "discriminant_identity_check",
    "local_solubility_witness",
    "search_admissible_prime",
    "validate_params",
    "NewtonPolygon",
    "certify_non_monogenic",
    "jk_bound",
    "lower_hull",
    "ore_bound",
    "phi_index",
    "phi_newton_polygon",
    "IntegerPolynomial",
    "linear_product",
    "parse_polynomial",
    "phi_expand",
    "discriminant",
    "resultant",
    "bernoulli",
    "is_regular_prime",
    "stirling_family_polynomial",
    "stirling_table",
    "verify_stirling_valuations",
]
