"""Exact minimization of box-constrained tropical Puiseux polynomials by
backward variable elimination and forward substitution."""

from .cheb import ChebDataset, ChebResult, fit, from_tropical, to_tropical
from .eliminate import (
    CapacityError,
    EliminationTrace,
    ObjectiveStage,
    Solution,
    SolverOptions,
    backward_eliminate,
    build_constraints,
    eliminate_step,
    forward_substitute,
    solve,
)
from .oracle import GeneratorParams, grid_oracle, random_problem, vertex_oracle
from .polynomial import (
    Box,
    Monomial,
    Polynomial,
    Problem,
    ValidationError,
    canonicalize,
    evaluate,
    parse_problem,
    serialize_problem,
)
from .semifield import MAX_PLUS, MIN_PLUS, ZERO, Semifield, SemifieldError, get_semifield
from .univariate import Interval, breakpoint_oracle, solve_univariate

__all__ = [
    "Box", "CapacityError", "ChebDataset", "ChebResult", "EliminationTrace", "GeneratorParams",
    "Interval", "MAX_PLUS", "MIN_PLUS", "Monomial", "ObjectiveStage", "Polynomial", "Problem",
    "Semifield", "SemifieldError", "Solution", "SolverOptions", "ValidationError", "ZERO",
    "backward_eliminate", "breakpoint_oracle", "build_constraints", "canonicalize",
    "eliminate_step", "evaluate", "fit", "forward_substitute", "from_tropical", "get_semifield",
    "grid_oracle", "parse_problem", "random_problem", "serialize_problem", "solve",
    "solve_univariate", "to_tropical", "vertex_oracle",
]
