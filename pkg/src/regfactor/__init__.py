"""Exact coadjoint invariants of regular factors of the unitriangular
Lie algebra: diagrams, permutations, characteristic minors, and a full
verification harness over the rationals."""

from .diagram import (
    Diagram,
    DiagramCounts,
    Symbol,
    build_diagram,
    crosscheck_symbols,
    symbol_from_reflections,
)
from .errors import BudgetError, ConstructionError, InputError, RegFactorError
from .invariants import (
    InvariantRecord,
    all_invariants,
    case_of,
    invariant_for,
    minor_support,
    triangular_decomposition,
)
from .minors import (
    CharMatrix,
    MinorSpec,
    characteristic_matrix,
    enumerate_extremal,
    is_extremal,
    minor_lambda,
    phi_matrix,
    shift_spec,
)
from .poly import (
    LambdaPolynomial,
    Polynomial,
    bracket_single,
    evaluate,
    jacobian_rank,
    parse_polynomial,
    poisson_bracket,
    poisson_bracket_generator,
    reduce_mod_ideal,
)
from .roots import (
    RegularIdeal,
    Root,
    close_ideal,
    compare_prec,
    positive_roots,
    prec_key,
    root_sum,
)
from .verify import (
    CheckResult,
    DualPoint,
    GroupElement,
    SkewStats,
    VerificationReport,
    check_invariance,
    coadjoint_act,
    full_report,
    invariant_in_span,
    oracle_invariants,
    skew_rank_stats,
)
from .weyl import (
    Permutation,
    SegmentData,
    column_max_permutation,
    descent_chain,
    inversions,
    minor_columns,
    reflection_product,
    reflections_in_column,
    reflections_through,
    reflections_up_to,
    segment_data,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
