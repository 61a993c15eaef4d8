"""Λ words, padding, and the padded OR / AND / MAJORITY gates.

A padded block is ``g^M A g^-M``.  As long as ``g`` and ``g^-1`` each occur
fewer than ``M`` times in a nontrivial ``A``, the block reduces to a word
that starts and ends with ``g^±1``, so neighbouring blocks padded with
different generators cannot cancel into each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError, PaddingError
from .words import (
    IDENTITY,
    Concat,
    Inverse,
    Leaf,
    Power,
    Word,
    WordExpr,
    _reduce_tuple,
    commutator,
    from_word,
    occurrences,
)


def balanced_commutator(gens: Sequence[int]) -> WordExpr:
    """Recursive commutator on ``gens``: split at ``len // 2``, then
    ``A B A^-1 B^-1`` on the two halves.  Written length is ``n^2`` for
    ``n`` a power of two."""
    if not gens:
        raise InputError("need at least one generator")
    if len(gens) == 1:
        return Leaf(gens[0])
    half = len(gens) // 2
    return commutator(balanced_commutator(gens[:half]), balanced_commutator(gens[half:]))


def lambda_word(s: Iterable[int], rank: int | None = None) -> WordExpr:
    """A word over exactly the generators in ``s`` that is nontrivial when
    all of them are present and collapses when any one is removed."""
    gens = sorted(set(s))
    if not gens:
        raise InputError("Λ of the empty set is undefined")
    if rank is not None and gens[-1] > rank:
        raise InputError(f"generator x{gens[-1]} exceeds rank {rank}")
    if gens[0] < 1:
        raise InputError("generator indices start at 1")
    return balanced_commutator(gens)


@dataclass(frozen=True)
class PaddingSpec:
    pad_gen: int
    M: int

    def __post_init__(self):
        if self.pad_gen < 1:
            raise InputError("pad generator index must be >= 1")
        if self.M < 1:
            raise InputError("padding exponent M must be >= 1")

    def wrap(self, operand: WordExpr) -> WordExpr:
        g = Leaf(self.pad_gen)
        return Concat(Power(g, self.M), operand, Power(g, -self.M))


def _max_occ(operand, g: int) -> int:
    return max(occurrences(operand, g))


def choose_padding(
    operand: WordExpr | Word,
    forbidden: Iterable[int] = (),
    rank: int = 0,
    context: Sequence[WordExpr] = (),
    unit: bool = False,
) -> PaddingSpec:
    """Pick the pad generator for ``operand``.

    Candidates are generators outside ``forbidden``.  Preference order: the
    smallest legal M (max occurrence in the operand, plus one), then fewest
    total occurrences in the ``context`` operands, then smallest index.
    With ``unit`` set, only M = 1 is acceptable.
    """
    if isinstance(operand, Word):
        operand = from_word(operand)
    forbidden = set(forbidden)
    best = None
    for g in range(1, rank + 1):
        if g in forbidden:
            continue
        m = _max_occ(operand, g) + 1
        if unit and m != 1:
            continue
        key = (m, sum(sum(occurrences(c, g)) for c in context), g)
        if best is None or key < best:
            best = key
    if best is None:
        why = "with M=1 " if unit else ""
        raise PaddingError(f"no pad generator available {why}(rank {rank}, forbidden {sorted(forbidden)})")
    return PaddingSpec(best[2], best[0])


def choose_pads(operands: Sequence[WordExpr], rank: int, unit: bool = False) -> list:
    """Pairwise distinct pads, one per operand, chosen greedily in order."""
    pads: list[PaddingSpec] = []
    for i, op in enumerate(operands):
        # unit mode keeps the plain smallest-index rule so low generators get reused
        others = [] if unit else [o for j, o in enumerate(operands) if j != i]
        pads.append(choose_padding(op, {p.pad_gen for p in pads}, rank, others, unit))
    return pads


def _need_rank(rank: int, minimum: int, gate: str) -> None:
    if rank < minimum:
        raise InputError(f"{gate} needs at least {minimum} generators, rank is {rank}")


def _check_pads(pads, count):
    if len(pads) != count or len({p.pad_gen for p in pads}) != count:
        raise InputError(f"need {count} distinct pad generators")


def safe_or(a: WordExpr, b: WordExpr, rank: int, pads=None) -> WordExpr:
    """``(x^M A x^-M)(y^M' B y^-M')``."""
    _need_rank(rank, 2, "safe_or")
    pads = pads or choose_pads([a, b], rank)
    _check_pads(pads, 2)
    return Concat(pads[0].wrap(a), pads[1].wrap(b))


def safe_and(a: WordExpr, b: WordExpr, rank: int, pads=None) -> WordExpr:
    """Padded commutator of ``a`` and ``b``."""
    _need_rank(rank, 2, "safe_and")
    pads = pads or choose_pads([a, b], rank)
    _check_pads(pads, 2)
    x, y = pads
    return Concat(x.wrap(a), y.wrap(b), x.wrap(Inverse(a)), y.wrap(Inverse(b)))


def safe_majority(a: WordExpr, b: WordExpr, c: WordExpr, rank: int, pads=None, unit: bool = False) -> WordExpr:
    """Padded ``A B C A^-1 B^-1 C^-1``: trivial when at most one operand is."""
    _need_rank(rank, 3, "safe_majority")
    pads = pads or choose_pads([a, b, c], rank, unit=unit)
    _check_pads(pads, 3)
    x, y, z = pads
    return Concat(
        x.wrap(a), y.wrap(b), z.wrap(c),
        x.wrap(Inverse(a)), y.wrap(Inverse(b)), z.wrap(Inverse(c)),
    )


def begins_ends_with_pad(w: Word | WordExpr, pad: PaddingSpec) -> bool:
    letters = w.reduced_letters() if isinstance(w, WordExpr) else w.letters
    g, m = pad.pad_gen, pad.M
    red = _reduce_tuple((g,) * m + tuple(letters) + (-g,) * m)
    return bool(red) and abs(red[0]) == g and abs(red[-1]) == g


__all__ = [
    "IDENTITY",
    "PaddingSpec",
    "balanced_commutator",
    "begins_ends_with_pad",
    "choose_padding",
    "choose_pads",
    "lambda_word",
    "safe_and",
    "safe_majority",
    "safe_or",
]
