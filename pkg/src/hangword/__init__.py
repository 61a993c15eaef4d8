"""Picture-hanging words: compile monotone hanging rules into
free-group words and verify them on every set of remaining nails."""

from .compile import all_nails, compile_formula, from_formula, from_minimal_sets, kofn_dnc
from .errors import InputError, RankMismatch, SearchExhausted, UnrealizableError
from .gates import lambda_word, safe_and, safe_majority, safe_or
from .monotone import Formula, MinimalSets, Threshold, TruthTable, parse_formula
from .verify import verify_exhaustive, verify_sampled
from .words import NailState, Word, WordExpr, quotient, reduce

__all__ = [
    "Formula", "InputError", "MinimalSets", "NailState", "RankMismatch", "SearchExhausted",
    "Threshold", "TruthTable", "UnrealizableError", "Word", "WordExpr", "all_nails",
    "compile_formula", "from_formula", "from_minimal_sets", "kofn_dnc", "lambda_word",
    "parse_formula", "quotient", "reduce", "safe_and", "safe_majority", "safe_or",
    "verify_exhaustive", "verify_sampled",
]
