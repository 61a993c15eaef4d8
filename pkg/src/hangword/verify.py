"""Check a word against a hanging rule on every (or randomly sampled) nail state."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional, Union

from .errors import InputError, RankMismatch
from .monotone import MonotoneFn
from .witness import SL2Witness
from .words import NailState, Word, WordExpr, quotient_letters

DEFAULT_EXHAUSTIVE_CAP = 24
DEFAULT_COUNTEREXAMPLE_LIMIT = 16

WordLike = Union[Word, WordExpr]


@dataclass
class Counterexample:
    state: list
    expected_hang: bool
    got_nontrivial: bool


@dataclass
class VerifyReport:
    verified: Optional[bool]
    states_checked: int
    counterexamples: list = field(default_factory=list)
    counterexample_count: int = 0
    reduced_length: int = 0
    written_length: int = 0
    mode: str = "exhaustive"
    seed: Optional[int] = None
    verdict: str = ""

    def to_json(self) -> dict:
        return asdict(self)


def _rank_of(w: WordLike) -> Optional[int]:
    return w.rank if isinstance(w, Word) else None


def _lengths(w: WordLike) -> tuple[int, int]:
    if isinstance(w, WordExpr):
        return w.written_length(), len(w.reduced_letters())
    return len(w), len(w)


def _check_ranks(w: WordLike, f: MonotoneFn) -> None:
    r = _rank_of(w)
    if r is not None and r != f.rank:
        raise RankMismatch(f"word rank {r} != function rank {f.rank}")
    if r is None and w.max_index() > f.rank:
        raise RankMismatch(f"word uses x{w.max_index()} but function rank is {f.rank}")


def check_states(w: WordLike, f: MonotoneFn, masks: Iterable[int], limit: int):
    """Evaluate the given states; returns (checked, total_bad, first ``limit`` bad)."""
    checked = bad = 0
    kept = []
    witness = SL2Witness(f.rank) if isinstance(w, WordExpr) else None
    for mask in masks:
        checked += 1
        # a non-identity matrix image already proves the quotient nontrivial
        hangs = (witness is not None and witness.certifies_nontrivial(w, mask)) or bool(
            quotient_letters(w, mask)
        )
        expected = f.evaluate_mask(mask)
        if hangs != expected:
            bad += 1
            if len(kept) < limit:
                kept.append(Counterexample(sorted(NailState.from_mask(f.rank, mask).present), expected, hangs))
    return checked, bad, kept


def _merge(parts, limit):
    checked = sum(p[0] for p in parts)
    bad = sum(p[1] for p in parts)
    kept = [c for p in parts for c in p[2]][:limit]
    return checked, bad, kept


def _chunk(w, f, lo, hi, limit):
    return check_states(w, f, range(lo, hi), limit)


def verify_exhaustive(
    w: WordLike,
    f: MonotoneFn,
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
    limit: int = DEFAULT_COUNTEREXAMPLE_LIMIT,
    partitions: int = 1,
    workers: int = 1,
) -> VerifyReport:
    """Check all ``2^n`` states.

    The state space is cut into ``partitions`` contiguous ranges; with
    ``workers > 1`` they run in separate processes.  The merged report does
    not depend on either number.
    """
    _check_ranks(w, f)
    n = f.rank
    if n > cap:
        raise InputError(f"n={n} exceeds the exhaustive cap {cap}; use sampled verification")
    total = 1 << n
    partitions = max(1, min(partitions, total))
    bounds = [total * i // partitions for i in range(partitions + 1)]
    ranges = list(zip(bounds, bounds[1:]))
    if workers > 1 and partitions > 1:
        # ship the reduced word; expression trees are large to pickle
        payload = Word(tuple(w.reduced_letters()), n) if isinstance(w, WordExpr) else w
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_chunk, *zip(*[(payload, f, lo, hi, limit) for lo, hi in ranges])))
    else:
        parts = [_chunk(w, f, lo, hi, limit) for lo, hi in ranges]
    checked, bad, kept = _merge(parts, limit)
    written, reduced = _lengths(w)
    ok = bad == 0
    return VerifyReport(
        verified=ok,
        states_checked=checked,
        counterexamples=kept,
        counterexample_count=bad,
        reduced_length=reduced,
        written_length=written,
        mode="exhaustive",
        verdict="verified" if ok else f"{bad} counterexample(s)",
    )


def verify_sampled(w: WordLike, f: MonotoneFn, trials: int, seed: int,
                   limit: int = DEFAULT_COUNTEREXAMPLE_LIMIT) -> VerifyReport:
    """Check ``trials`` uniformly random states.

    Never claims ``verified=True``: a clean run reports ``verified=None``.
    """
    if trials < 1:
        raise InputError("trials must be >= 1")
    _check_ranks(w, f)
    rng = random.Random(seed)
    masks = [rng.getrandbits(f.rank) for _ in range(trials)]
    checked, bad, kept = check_states(w, f, masks, limit)
    written, reduced = _lengths(w)
    return VerifyReport(
        verified=False if bad else None,
        states_checked=checked,
        counterexamples=kept,
        counterexample_count=bad,
        reduced_length=reduced,
        written_length=written,
        mode="sampled",
        seed=seed,
        verdict=f"{bad} counterexample(s) in {trials} trials" if bad
        else f"no counterexample found in {trials} trials",
    )


def monotonicity_probe(w: WordLike, samples: int, seed: int, rank: Optional[int] = None) -> bool:
    """Sample nested states s ⊆ t and confirm a word hanging on s hangs on t."""
    if rank is None:
        rank = _rank_of(w)
        if rank is None:
            rank = w.max_index()
    rng = random.Random(seed)
    for _ in range(samples):
        t = rng.getrandbits(rank) if rank else 0
        s = t & (rng.getrandbits(rank) if rank else 0)
        if quotient_letters(w, s) and not quotient_letters(w, t):
            return False
    return True
