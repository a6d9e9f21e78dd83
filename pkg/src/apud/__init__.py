"""Unit disk graphs on axes-parallel lines: the NAE3SAT reduction, exact verification and
recognition checks."""

__version__ = "0.1.0"

from .errors import ParseError, RejectedInput
from .geometry import LineConfig, LineRef, Placement, Point, verify_realization
from .graphs import Graph, Occurrence, PatternKind, find_induced, make_pattern
from .reduction import Assignment, LayoutProfile, NaeFormula, parse_nae3sat, reduce, witness_embedding
from .recognize import (
    SearchBudget,
    SearchResult,
    Verdict,
    apud11_obstructions,
    apud11_sufficient,
    apud_gt2_sufficient,
    is_unit_interval,
    solve_placement_grid,
    uig_oracle,
)

__all__ = [
    "Assignment",
    "Graph",
    "LayoutProfile",
    "LineConfig",
    "LineRef",
    "NaeFormula",
    "Occurrence",
    "ParseError",
    "PatternKind",
    "Placement",
    "Point",
    "RejectedInput",
    "SearchBudget",
    "SearchResult",
    "Verdict",
    "apud11_obstructions",
    "apud11_sufficient",
    "apud_gt2_sufficient",
    "find_induced",
    "is_unit_interval",
    "make_pattern",
    "parse_nae3sat",
    "reduce",
    "solve_placement_grid",
    "uig_oracle",
    "verify_realization",
    "witness_embedding",
]
