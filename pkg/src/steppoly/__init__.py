"""Exact bivariate mixed-type multiple orthogonal polynomials on the step-line.

Build the moment matrix of a q x p measure matrix, factorize it in exact
rational arithmetic, read off the biorthogonal polynomial families, and verify
every structural identity (orthogonality, band recurrences, Christoffel-
Darboux and ABC formulas) with zero tolerance.
"""

from .bipoly import BiPoly, PolyMatrix, shift_monomial
from .cdkernel import (
    CDBlocks,
    cd_blocks,
    check_abc,
    check_cd_formula,
    check_projection,
    check_projection_dual,
    check_reproduction,
    kernel_eval,
)
from .errors import Breakdown, ConfigError, DepthError, SingularMatrix
from .families import (
    FamilyA,
    FamilyB,
    check_biorthogonality,
    check_orthogonality,
    extract_families,
    validate_degree_structure,
)
from .gaussborel import Factorization, factorize, invert_unitriangular
from .measures import Discrete, MeasureMatrix, MomentTable, RectDensity, measure_from_json
from .moments import (
    MomentTruncation,
    ShiftTruncation,
    apply_shift_to_monomials,
    assemble_moments,
    check_hankel_symmetry,
    shift_operator,
)
from .rational import as_rat, format_rat, parse_rat, rat
from .recurrence import (
    RecurrenceTruncation,
    build_recurrence,
    check_dual_form,
    check_recurrence_matrix,
    check_recurrences,
    recurrence_n_max,
    required_depth,
    validate_band,
)
from .stepline import (
    GradedIndex,
    f_variants,
    floor_f,
    in_complement_J,
    n_minus_big,
    n_plus,
    pair_of,
    pos_of,
)

__version__ = "0.1.0"

__all__ = [
    "BiPoly",
    "Breakdown",
    "CDBlocks",
    "ConfigError",
    "DepthError",
    "Discrete",
    "Factorization",
    "FamilyA",
    "FamilyB",
    "GradedIndex",
    "MeasureMatrix",
    "MomentTable",
    "MomentTruncation",
    "PolyMatrix",
    "RecurrenceTruncation",
    "RectDensity",
    "ShiftTruncation",
    "SingularMatrix",
    "apply_shift_to_monomials",
    "as_rat",
    "assemble_moments",
    "build_recurrence",
    "cd_blocks",
    "check_abc",
    "check_biorthogonality",
    "check_cd_formula",
    "check_dual_form",
    "check_hankel_symmetry",
    "check_orthogonality",
    "check_projection",
    "check_projection_dual",
    "check_recurrence_matrix",
    "check_recurrences",
    "check_reproduction",
    "extract_families",
    "f_variants",
    "factorize",
    "floor_f",
    "format_rat",
    "in_complement_J",
    "invert_unitriangular",
    "kernel_eval",
    "measure_from_json",
    "n_minus_big",
    "n_plus",
    "pair_of",
    "parse_rat",
    "pos_of",
    "rat",
    "recurrence_n_max",
    "required_depth",
    "shift_monomial",
    "shift_operator",
    "validate_band",
    "validate_degree_structure",
]
