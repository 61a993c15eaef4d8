"""Deterministic compilers from hanging rules to words."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce as _fold

from .errors import CompileError, InputError
from .gates import balanced_commutator, lambda_word, safe_and, safe_or
from .monotone import (
    And,
    Formula,
    MonotoneFn,
    Threshold,
    Var,
    minimal_true_sets,
    to_formula,
    to_minimal_sets,
)
from .verify import DEFAULT_EXHAUSTIVE_CAP, verify_exhaustive
from .words import Concat, Leaf, WordExpr, commutator


@dataclass
class Compiled:
    """A compiled expression with the provenance needed for reports."""

    expr: WordExpr
    rank: int
    construction: str
    params: dict = field(default_factory=dict)

    def provenance(self) -> dict:
        return {
            "method": self.construction,
            "params": self.params,
            "rank": self.rank,
            "written_length": self.expr.written_length(),
            "reduced_length": len(self.expr.reduced_letters()),
        }


def all_nails(n: int) -> WordExpr:
    """Falls as soon as any one of the ``n`` nails is removed."""
    if n < 1:
        raise InputError("all_nails needs n >= 1")
    return balanced_commutator(list(range(1, n + 1)))


def from_minimal_sets(f: MonotoneFn) -> WordExpr:
    """Product of Λ(S) over the minimal true sets of ``f``."""
    factors = [lambda_word(s, f.rank) for s in minimal_true_sets(f)]
    return factors[0] if len(factors) == 1 else Concat(*factors)


def gate_compile(formula: Formula) -> WordExpr:
    """Replace variables by generators and AND/OR nodes by padded gates,
    folding n-ary nodes from the left.  No verification."""
    rank = formula.rank
    if rank < 2:
        raise InputError("gate compilation needs at least 2 generators; use from_minimal_sets")

    def build(node) -> WordExpr:
        if isinstance(node, Var):
            return Leaf(node.index)
        parts = [build(c) for c in node.children]
        gate = safe_and if isinstance(node, And) else safe_or
        return _fold(lambda acc, nxt: gate(acc, nxt, rank), parts)

    return build(formula.tree)


def compile_formula(f: MonotoneFn, cap: int = DEFAULT_EXHAUSTIVE_CAP) -> tuple[WordExpr, str]:
    """Gate-compile ``f`` and certify the result.

    The tree as written is tried first.  A commutator collapses whenever
    both operands land in a cyclic subgroup (e.g. only one nail left), so
    some formulas cannot be gate-compiled verbatim; those are recompiled
    from their minimal-set DNF.  Returns the word and which form was used:
    ``"as-written"``, ``"dnf"``, or ``"unverified"`` above the cap.
    """
    formula = f if isinstance(f, Formula) else to_formula(f)
    expr = gate_compile(formula)
    if f.rank > cap:
        return expr, "unverified"
    if verify_exhaustive(expr, f, cap=cap).verified:
        return expr, "as-written"
    expr = gate_compile(to_formula(to_minimal_sets(f)))
    report = verify_exhaustive(expr, f, cap=cap)
    if not report.verified:
        raise CompileError(f"gate compilation failed verification: {report.verdict}")
    return expr, "dnf"


def from_formula(f: MonotoneFn) -> WordExpr:
    """Gate-compiled word for ``f``, verified on every nail state."""
    return compile_formula(f)[0]


def kofn_dnc(n: int, k: int) -> WordExpr:
    """Divide-and-conquer threshold word for "at least k of n nails".

    Halves of sizes ceil(n/2) (A side) and floor(n/2) (B side); the word is
    ``B_k [A_1, B_{k-1}] ... [A_{k-1}, B_1] A_k`` with identity factors left
    out.
    """
    if not 1 <= k <= n:
        raise InputError(f"kofn_dnc needs 1 <= k <= n, got k={k}, n={n}")
    memo: dict = {}

    def build(lo: int, hi: int, j: int):
        # threshold j on generators lo..hi-1; None stands for the identity
        size = hi - lo
        if j > size:
            return None
        key = (lo, hi, j)
        if key in memo:
            return memo[key]
        if size == 1:
            out = Leaf(lo)
        else:
            mid = lo + (size + 1) // 2
            factors = []
            b_k = build(mid, hi, j)
            if b_k is not None:
                factors.append(b_k)
            for i in range(1, j):
                a_i, b_rest = build(lo, mid, i), build(mid, hi, j - i)
                if a_i is not None and b_rest is not None:
                    factors.append(commutator(a_i, b_rest))
            a_k = build(lo, mid, j)
            if a_k is not None:
                factors.append(a_k)
            out = factors[0] if len(factors) == 1 else Concat(*factors)
        memo[key] = out
        return out

    return build(1, n + 1, k)


METHODS = ("all-nails", "lambda", "formula", "dnc", "random")


def compile_function(f: MonotoneFn, method: str) -> Compiled:
    """Dispatch one of the deterministic constructions by name."""
    n = f.rank
    if method == "all-nails":
        if not (isinstance(f, Threshold) and f.k == n):
            raise InputError("all-nails realizes only the threshold k = n")
        return Compiled(all_nails(n), n, method, {"n": n})
    if method == "lambda":
        return Compiled(from_minimal_sets(f), n, method, {"spec": f.to_json()})
    if method == "formula":
        expr, form = compile_formula(f)
        return Compiled(expr, n, method, {"spec": f.to_json(), "form": form})
    if method == "dnc":
        if not isinstance(f, Threshold):
            raise InputError("dnc compiles threshold targets only")
        return Compiled(kofn_dnc(n, f.k), n, method, {"n": n, "k": f.k})
    raise InputError(f"unknown or non-deterministic method {method!r}")
