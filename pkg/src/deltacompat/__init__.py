"""Exact arithmetic for compatible rational certificate systems."""

from .context import VarContext, DEFAULT_ORDERING
from .errors import (
    CapacityError,
    ContextMismatchError,
    DeltaCompatError,
    EvaluationError,
    ExpressionParseError,
    MergeConflictError,
    NotCompatibleError,
    StructureViolationError,
)
from .compat import CertificateSystem, CompatReport, Violation, check
from .ops import (
    OpRef,
    all_ops,
    apply,
    delta,
    log_quotient,
    proper_evaluate,
    set_evaluation_defaults,
    sigma,
    tau,
)
from .parser import parse_document, parse_expression
from .poly import MultiPoly, poly_gcd, poly_lcm, resultant, content_wrt, squarefree_part
from .ratfunc import BlockSplit, RatFunc, canonical_monic, is_monic, split_blocks
from .reduction import (
    DispersionResult,
    REDUCED,
    STANDARD,
    ReducedDecomposition,
    dispersion,
    is_log_derivative,
    merge_rational_solution,
    reduced_decompose,
    solve_quotient,
)
from .lattice import (
    GcdFreeBasis,
    IntegerLattice,
    gcdfree_basis,
    hermite_normal_form,
    integer_kernel,
    lattice_intersect,
    lattice_project,
    multiplicative_relations,
    small_nonzero,
)
from .structure import (
    DependenceWitness,
    HProduct,
    Representation,
    algebraic_dependence,
    build_system,
    decompose,
    is_rational_product,
    represent,
    sample_representation,
    standardize,
)

__all__ = [
    "VarContext",
    "DEFAULT_ORDERING",
    "MultiPoly",
    "RatFunc",
    "BlockSplit",
    "poly_gcd",
    "poly_lcm",
    "resultant",
    "content_wrt",
    "squarefree_part",
    "canonical_monic",
    "is_monic",
    "split_blocks",
    "DeltaCompatError",
    "ContextMismatchError",
    "ExpressionParseError",
    "NotCompatibleError",
    "StructureViolationError",
    "CapacityError",
    "EvaluationError",
    "MergeConflictError",
    "CertificateSystem",
    "CompatReport",
    "Violation",
    "check",
    "OpRef",
    "all_ops",
    "apply",
    "delta",
    "sigma",
    "tau",
    "log_quotient",
    "proper_evaluate",
    "set_evaluation_defaults",
    "parse_document",
    "parse_expression",
    "DispersionResult",
    "ReducedDecomposition",
    "REDUCED",
    "STANDARD",
    "dispersion",
    "reduced_decompose",
    "solve_quotient",
    "is_log_derivative",
    "merge_rational_solution",
    "IntegerLattice",
    "GcdFreeBasis",
    "hermite_normal_form",
    "integer_kernel",
    "lattice_intersect",
    "lattice_project",
    "small_nonzero",
    "gcdfree_basis",
    "multiplicative_relations",
    "Representation",
    "HProduct",
    "DependenceWitness",
    "build_system",
    "represent",
    "standardize",
    "decompose",
    "is_rational_product",
    "algebraic_dependence",
    "sample_representation",
]

__version__ = "0.1.0"
