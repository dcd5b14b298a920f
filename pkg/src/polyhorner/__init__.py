"""Horner factorisation and fast repeated evaluation of sparse multivariate
polynomials, with an operation-count / numerical-error benchmark harness."""

from .benchmark import (
    BenchmarkConfig,
    CellSummary,
    SplitMix64,
    TrialRecord,
    cell_plan,
    draw_random_polynomial,
    error_trial,
    format_summary,
    mix_seed,
    random_polynomial,
    records_to_csv,
    summarize,
    sweep,
)
from .canonical import (
    CanonicalPolynomial,
    DegreeKind,
    count_fully_occupied,
    graded_lex_key,
    make_polynomial,
    polynomial_from_dict,
)
from .factorize import (
    Branch,
    HornerFactorisation,
    HornerNode,
    Leaf,
    SearchInfo,
    expand,
    factorize_greedy,
    factorize_optimal,
    num_ops,
    render,
)
from .recipe import (
    Instruction,
    Opcode,
    Recipe,
    RecipeEvaluator,
    compile_recipe,
    dump_recipe,
    eval_recipe,
    op_count,
    validate_recipe,
)

__version__ = "0.1.0"

__all__ = [
    "BenchmarkConfig",
    "Branch",
    "CanonicalPolynomial",
    "CellSummary",
    "DegreeKind",
    "HornerFactorisation",
    "HornerNode",
    "Instruction",
    "Leaf",
    "Opcode",
    "Recipe",
    "RecipeEvaluator",
    "SearchInfo",
    "SplitMix64",
    "TrialRecord",
    "cell_plan",
    "compile_recipe",
    "count_fully_occupied",
    "draw_random_polynomial",
    "dump_recipe",
    "error_trial",
    "eval_recipe",
    "expand",
    "factorize_greedy",
    "factorize_optimal",
    "format_summary",
    "graded_lex_key",
    "make_polynomial",
    "mix_seed",
    "num_ops",
    "op_count",
    "polynomial_from_dict",
    "random_polynomial",
    "records_to_csv",
    "render",
    "summarize",
    "sweep",
    "validate_recipe",
]
