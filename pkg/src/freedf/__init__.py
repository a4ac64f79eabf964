"""freedf: exact combinatorics of free easy quantum groups.

Non-crossing partition categories, Moebius inversion, Weingarten
calculus, free moment-cumulant transforms, and de Finetti invariance
tools, all in exact rational arithmetic.
"""

from .categories import (
    B_PLUS,
    H_PLUS,
    O_PLUS,
    S_PLUS,
    CategoryId,
    c_leq,
    category_contains,
    enumerate_category,
    parse_category,
)
from .cumulants import (
    CumulantTable,
    MomentTable,
    cumulants_from_moments,
    kappa_pi,
    moments_from_cumulants,
    phi_pi,
    table_from_json,
)
from .definetti import (
    CoefficientSlice,
    InvarianceReport,
    asymptotic_freeness_probe,
    averaged_coefficients,
    c_from_C,
    C_from_c,
    check_invariance,
    generate_invariant_model,
    normalized_block_sum,
    reconstruct_infinite,
    seed_coefficients,
    semicircular_model,
    solve_cumulant_coefficients,
    solve_moment_coefficients,
)
from .errors import FreedfError
from .partitions import (
    Partition,
    enumerate_partitions,
    is_noncrossing,
    join,
    kernel,
    leq,
    parse_partition,
    restrict,
)
from .posets import FinitePoset, mobius, mobius_to_top_full_lattice, mobius_to_top_nc
from .weingarten import gram, haar_moment, verify_inverse, weingarten, wg_scaled

__version__ = "0.1.0"

__all__ = [
    "B_PLUS",
    "H_PLUS",
    "O_PLUS",
    "S_PLUS",
    "CategoryId",
    "CoefficientSlice",
    "CumulantTable",
    "FinitePoset",
    "FreedfError",
    "InvarianceReport",
    "MomentTable",
    "Partition",
    "asymptotic_freeness_probe",
    "averaged_coefficients",
    "c_from_C",
    "C_from_c",
    "c_leq",
    "category_contains",
    "check_invariance",
    "cumulants_from_moments",
    "enumerate_category",
    "enumerate_partitions",
    "generate_invariant_model",
    "gram",
    "haar_moment",
    "is_noncrossing",
    "join",
    "kappa_pi",
    "kernel",
    "leq",
    "mobius",
    "mobius_to_top_full_lattice",
    "mobius_to_top_nc",
    "moments_from_cumulants",
    "normalized_block_sum",
    "parse_category",
    "parse_partition",
    "phi_pi",
    "reconstruct_infinite",
    "restrict",
    "seed_coefficients",
    "semicircular_model",
    "solve_cumulant_coefficients",
    "solve_moment_coefficients",
    "table_from_json",
    "verify_inverse",
    "weingarten",
    "wg_scaled",
]
