"""lazysat: SAT solving over lazy clause partitions reconciled by interpolants."""

from .cnf import (
    Clause,
    DimacsError,
    Formula,
    Lit,
    eval_formula,
    is_tautology,
    normalize_clause,
    parse_dimacs,
    write_dimacs,
)
from .decomp import Decomposition, Partition, decompose_lazy, shared_and_private
from .itp import (
    A_LOCAL,
    B_LOCAL,
    SHARED,
    ItpSystem,
    initial_interpolant,
    interpolant_from_proof,
    resolve_interpolant,
    var_classes,
)
from .proof import LABEL_A, LABEL_B, ProofError, ProofStore
from .rbc import FALSE, TRUE, RbcRef, RbcStore, mk_not
from .reconcile import (
    InterpolantRecord,
    ReconcileResult,
    ReconcileStats,
    assemble_model,
    reconcile,
)
from .solver import (
    SENTINEL,
    BudgetExceeded,
    Sat,
    SolveOutcome,
    Solver,
    Unsat,
    UnsatUnderAssumptions,
)

__version__ = "0.1.0"

__all__ = [
    "A_LOCAL",
    "B_LOCAL",
    "BudgetExceeded",
    "Clause",
    "Decomposition",
    "DimacsError",
    "FALSE",
    "Formula",
    "InterpolantRecord",
    "ItpSystem",
    "LABEL_A",
    "LABEL_B",
    "Lit",
    "Partition",
    "ProofError",
    "ProofStore",
    "RbcRef",
    "RbcStore",
    "ReconcileResult",
    "ReconcileStats",
    "SENTINEL",
    "SHARED",
    "Sat",
    "SolveOutcome",
    "Solver",
    "TRUE",
    "Unsat",
    "UnsatUnderAssumptions",
    "assemble_model",
    "decompose_lazy",
    "eval_formula",
    "initial_interpolant",
    "interpolant_from_proof",
    "is_tautology",
    "mk_not",
    "normalize_clause",
    "parse_dimacs",
    "reconcile",
    "resolve_interpolant",
    "shared_and_private",
    "var_classes",
    "write_dimacs",
]
