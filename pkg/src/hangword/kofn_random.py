"""Randomized threshold words built from padded 2-of-3 majority gates.

A depth-0 word is a product of ``m`` distinct random generators (``m``
itself random, balanced so both kinds of mistake are equally likely).  A
depth ``d+1`` word combines three independent depth-``d`` words with
:func:`hangword.gates.safe_majority`; the common failure probability then
follows ``p -> 3p^2 - 2p^3``.  Sampled words are accepted only after
verification.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Optional

from .errors import InputError, PaddingError, SearchExhausted
from .gates import safe_majority
from .monotone import Threshold
from .verify import DEFAULT_EXHAUSTIVE_CAP, VerifyReport, verify_exhaustive, verify_sampled
from .words import IDENTITY, Concat, Leaf, WordExpr, quotient_letters

DEFAULT_SEED = 1729
EXACT_BITS_CAP = 4096

Prob = Fraction | float


def p_step(p: Prob) -> Prob:
    """One round of 2-of-3 majority: ``3p^2 - 2p^3``."""
    if not 0 <= p <= 1:
        raise InputError(f"probability out of range: {p}")
    return 3 * p * p - 2 * p * p * p


def p0_majority(n: int) -> Fraction:
    """Failure probability of a single uniform letter when n = 2k - 1."""
    if n < 1 or n % 2 == 0:
        raise InputError(f"the majority case needs odd n >= 1, got {n}")
    return Fraction(1, 2) - Fraction(1, 2 * n)


class FailureTracker:
    """The sequence p_0, p_1, ... kept exact until denominators get large."""

    def __init__(self, p0: Prob, exact_bits: int = EXACT_BITS_CAP):
        if not 0 <= p0 <= Fraction(1, 2):
            raise InputError(f"p0 must lie in [0, 1/2], got {p0}")
        self.exact_bits = exact_bits
        self.p = [Fraction(p0) if isinstance(p0, (int, Fraction)) else p0]

    @classmethod
    def for_threshold(cls, n: int, k: int) -> "FailureTracker":
        return cls(initializer(n, k).p0)

    def __getitem__(self, d: int) -> Prob:
        while len(self.p) <= d:
            last = self.p[-1]
            if isinstance(last, Fraction) and last.denominator.bit_length() > self.exact_bits:
                last = float(last)
            self.p.append(p_step(last))
        return self.p[d]

    def depth_below(self, target: Prob, max_depth: int = 1000) -> int:
        d = 0
        while self[d] >= target:
            d += 1
            if d > max_depth:
                raise InputError(f"failure probability does not drop below {target}")
        return d


def depth_schedule(n: int, target: Prob, k: Optional[int] = None) -> int:
    """Smallest depth whose failure probability is below ``target``.

    ``k`` defaults to the majority threshold ``(n + 1) // 2``.
    """
    if not 0 < target < 1:
        raise InputError("target must lie in (0, 1)")
    k = (n + 1) // 2 if k is None else k
    return FailureTracker.for_threshold(n, k).depth_below(target)


def default_depth(n: int, k: int) -> int:
    """Depth reaching failure probability below 2^-2n."""
    return depth_schedule(n, Fraction(1, 1 << (2 * n)), k)


def exponent_c() -> float:
    return math.log(6) / math.log(1.5) + math.log2(6)


def unpadded_phase_length(d: int) -> int:
    """Written length at depth ``d`` when every pad has exponent 1."""
    if d < 0:
        raise InputError("depth must be >= 0")
    return (17 * 6**d - 12) // 5


# Initializer


def fail_hang(n: int, k: int, m: int) -> Fraction:
    """P(some chosen index <= k-1), i.e. the word still hangs on k-1 nails."""
    return 1 - Fraction(comb(n - k + 1, m), comb(n, m))


def fail_fall(n: int, k: int, m: int) -> Fraction:
    """P(every chosen index > k), i.e. the word falls with k nails present."""
    return Fraction(comb(n - k, m), comb(n, m))


@dataclass(frozen=True)
class InitializerSpec:
    n: int
    k: int
    m_low: int
    mix_q: Fraction  # probability of drawing m_low rather than m_low + 1
    p0: Fraction

    @property
    def expected_m(self) -> Fraction:
        return self.mix_q * self.m_low + (1 - self.mix_q) * (self.m_low + 1)

    def failure_probabilities(self) -> tuple[Fraction, Fraction]:
        q, lo, hi = self.mix_q, self.m_low, self.m_low + 1
        n, k = self.n, self.k

        def mix(fn):
            high = fn(n, k, hi) if q != 1 else Fraction(0)
            return q * fn(n, k, lo) + (1 - q) * high

        return mix(fail_hang), mix(fail_fall)


def initializer(n: int, k: int) -> InitializerSpec:
    """Balance the two failure directions by mixing two consecutive m."""
    if not 1 <= k <= n:
        raise InputError(f"need 1 <= k <= n, got k={k}, n={n}")

    def gap(m):
        return fail_hang(n, k, m) - fail_fall(n, k, m)

    m = 0
    while gap(m) < 0:
        m += 1
    if gap(m) == 0:
        return InitializerSpec(n, k, m, Fraction(1), fail_hang(n, k, m))
    lo, hi = gap(m - 1), gap(m)
    q = hi / (hi - lo)
    p0 = q * fail_hang(n, k, m - 1) + (1 - q) * fail_hang(n, k, m)
    return InitializerSpec(n, k, m - 1, q, p0)


def sample_w0(spec: InitializerSpec, rng: random.Random) -> WordExpr:
    """Product of a uniform m-subset of generators, in ascending order."""
    q = spec.mix_q
    m = spec.m_low if rng.randrange(q.denominator) < q.numerator else spec.m_low + 1
    picks = sorted(rng.sample(range(1, spec.n + 1), m))
    if not picks:
        return IDENTITY
    if len(picks) == 1:
        return Leaf(picks[0])
    return Concat(*(Leaf(g) for g in picks))


# Sampling


def derive_seed(parent: int, index: int) -> int:
    data = (parent & (2**64 - 1)).to_bytes(8, "little") + index.to_bytes(8, "little")
    return int.from_bytes(hashlib.blake2b(data, digest_size=8).digest(), "little")


@dataclass(frozen=True)
class SampleConfig:
    n: int
    k: int
    depth: int
    seed: int = DEFAULT_SEED
    max_retries: int = 50
    unit_padding: bool = False  # force M = 1; PaddingError if that is illegal

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise InputError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if self.depth < 0:
            raise InputError("depth must be >= 0")
        if self.max_retries < 1:
            raise InputError("max_retries must be >= 1")
        if self.n == 2:
            raise InputError("n = 2 leaves no room for three distinct pads; use kofn_dnc")


def sample_word(config: SampleConfig, seed: Optional[int] = None) -> WordExpr:
    """Draw W_depth.  Every subtree gets its own seed derived from its
    parent's, so the result does not depend on evaluation order."""
    spec = initializer(config.n, config.k)
    n = config.n

    def build(s: int, d: int) -> WordExpr:
        if d == 0 or n == 1:
            return sample_w0(spec, random.Random(s))
        parts = [build(derive_seed(s, i), d - 1) for i in range(3)]
        # pads are picked only after the operands are drawn
        return safe_majority(*parts, rank=n, unit=config.unit_padding)

    return build(config.seed if seed is None else seed, config.depth)


def empirical_failure_rates(config: SampleConfig, samples: int) -> tuple[float, float]:
    """Fraction of samples hanging on the first k-1 nails, and falling on
    the first k nails."""
    k = config.k
    below, at = (1 << (k - 1)) - 1, (1 << k) - 1
    hang = fall = 0
    for i in range(samples):
        w = sample_word(config, derive_seed(config.seed, 10**6 + i))
        hang += bool(quotient_letters(w, below))
        fall += not quotient_letters(w, at)
    return hang / samples, fall / samples


@dataclass
class Attempt:
    attempt: int
    seed: int
    counterexamples: list
    counterexample_count: int


@dataclass
class FindResult:
    word: WordExpr
    attempts: int
    depth: int
    seed: int
    written_length: int
    reduced_length: int
    report: VerifyReport
    failures: list = field(default_factory=list)

    def summary(self) -> dict:
        return {
            "attempts": self.attempts,
            "depth": self.depth,
            "seed": self.seed,
            "written_length": self.written_length,
            "reduced_length": self.reduced_length,
        }


Verifier = Callable[[WordExpr, Threshold], VerifyReport]


def default_verifier(cap: int = DEFAULT_EXHAUSTIVE_CAP, trials: int = 4096, seed: int = DEFAULT_SEED) -> Verifier:
    def run(w, f):
        if f.rank <= cap:
            return verify_exhaustive(w, f, cap=cap)
        return verify_sampled(w, f, trials, seed)

    return run


def find_word(config: SampleConfig, verifier: Optional[Verifier] = None) -> FindResult:
    """Sample and verify until a word passes, up to ``max_retries`` tries."""
    verifier = verifier or default_verifier()
    target = Threshold(config.n, config.k)
    failures = []
    for attempt in range(1, config.max_retries + 1):
        seed = derive_seed(config.seed, attempt)
        try:
            w = sample_word(config, seed)
        except PaddingError:
            if not config.unit_padding:
                raise
            failures.append(Attempt(attempt, seed, [], -1))
            continue
        report = verifier(w, target)
        if report.verified is not False:
            return FindResult(w, attempt, config.depth, seed, w.written_length(),
                              len(w.reduced_letters()), report, failures)
        failures.append(Attempt(attempt, seed, report.counterexamples, report.counterexample_count))
    raise SearchExhausted(
        f"no verified word for k={config.k}, n={config.n} at depth {config.depth} "
        f"after {config.max_retries} attempts",
        failures,
    )
