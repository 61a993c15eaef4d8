"""Free-group words over generators x1..xn.

A letter is a nonzero signed integer: ``g`` stands for the generator
``x_g`` and ``-g`` for its inverse.  :class:`Word` holds a freely reduced
letter tuple together with its ambient rank.  :class:`WordExpr` trees keep
the as-written structure (so written lengths can be counted before any
cancellation) and are evaluated lazily; subtrees are shared, so a gate that
uses ``A`` and ``A^-1`` stores ``A`` once.
"""

from __future__ import annotations

import operator
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence, Union

from .errors import InputError, RankMismatch

Letter = int


def letter(index: int, sign: int = 1) -> Letter:
    if index < 1:
        raise InputError(f"generator index must be >= 1, got {index}")
    if sign not in (1, -1):
        raise InputError(f"sign must be +1 or -1, got {sign}")
    return index * sign


def _check_range(letters: Iterable[int], rank: int) -> None:
    for a in letters:
        if a == 0 or abs(a) > rank:
            raise InputError(f"letter {a} out of range for rank {rank}")


def _join(a: tuple, b: tuple) -> tuple:
    """Product of two reduced tuples; only the seam can cancel."""
    if not a:
        return b
    if not b:
        return a
    la, lb = len(a), len(b)
    i = 0
    while i < la and i < lb and a[la - 1 - i] == -b[i]:
        i += 1
    if i == 0:
        return a + b
    return a[: la - i] + b[i:]


def _inv(t: tuple) -> tuple:
    return tuple(map(operator.neg, reversed(t)))


def _repeat(t: tuple, e: int) -> tuple:
    """``t`` to the power ``e >= 0``, for reduced ``t``."""
    if not t or e == 0:
        return ()
    # strip the cancelling prefix/suffix, repeat the cyclic core
    i, n = 0, len(t)
    while 2 * i + 1 < n and t[i] == -t[n - 1 - i]:
        i += 1
    return t[:i] + t[i : n - i] * e + t[n - i :]


def _reduce_tuple(letters: Iterable[int], mask: int | None = None) -> tuple:
    """Single left-to-right stack pass; letters whose bit is clear in
    ``mask`` are skipped (deleted) on the fly."""
    stack: list[int] = []
    push, pop = stack.append, stack.pop
    for a in letters:
        if mask is not None and not (mask >> (abs(a) - 1)) & 1:
            continue
        if stack and stack[-1] == -a:
            pop()
        else:
            push(a)
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """A freely reduced word of the free group of the given rank."""

    letters: tuple
    rank: int

    def __post_init__(self):
        if self.rank < 0:
            raise InputError("rank must be nonnegative")
        _check_range(self.letters, self.rank)
        for a, b in zip(self.letters, self.letters[1:]):
            if a == -b:
                raise InputError("Word letters must be freely reduced; use reduce()")

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls((), rank)

    @classmethod
    def generator(cls, index: int, rank: int) -> "Word":
        return cls((letter(index),), rank)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __invert__(self) -> "Word":
        return inverse(self)

    def __pow__(self, e: int) -> "Word":
        return power(self, e)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def support(self) -> frozenset:
        return frozenset(abs(a) for a in self.letters)

    def __str__(self) -> str:
        return format_letters(self.letters)


def format_letters(letters: Iterable[int]) -> str:
    """Canonical token form, e.g. ``x1 x2 x1' x2'``."""
    return " ".join(f"x{a}" if a > 0 else f"x{-a}'" for a in letters)


def reduce(letters: Sequence[int], rank: int) -> Word:
    _check_range(letters, rank)
    return Word(_reduce_tuple(letters), rank)


def _same_rank(a: Word, b: Word) -> None:
    if a.rank != b.rank:
        raise RankMismatch(f"rank mismatch: {a.rank} vs {b.rank}")


def concat(a: Word, b: Word) -> Word:
    _same_rank(a, b)
    return Word(_join(a.letters, b.letters), a.rank)


def inverse(w: Word) -> Word:
    return Word(_inv(w.letters), w.rank)


def power(w: Word, e: int) -> Word:
    base = w.letters if e >= 0 else _inv(w.letters)
    return Word(_repeat(base, abs(e)), w.rank)


def occurrences(w: Union[Word, "WordExpr"], g: int) -> tuple[int, int]:
    """Counts of ``x_g`` and ``x_g^-1`` in the reduced form."""
    if isinstance(w, WordExpr):
        counts = w._counts()
        return counts.get(g, 0), counts.get(-g, 0)
    return w.letters.count(g), w.letters.count(-g)


@dataclass(frozen=True)
class NailState:
    """The set of nails still present, as a subset of {1..rank}."""

    rank: int
    present: frozenset

    def __post_init__(self):
        object.__setattr__(self, "present", frozenset(self.present))
        for i in self.present:
            if not 1 <= i <= self.rank:
                raise InputError(f"nail {i} outside 1..{self.rank}")

    @classmethod
    def from_mask(cls, rank: int, mask: int) -> "NailState":
        if mask < 0 or mask >> rank:
            raise InputError(f"mask {mask:#x} out of range for rank {rank}")
        return cls(rank, frozenset(i + 1 for i in range(rank) if mask >> i & 1))

    @classmethod
    def full(cls, rank: int) -> "NailState":
        return cls(rank, frozenset(range(1, rank + 1)))

    @property
    def mask(self) -> int:
        m = 0
        for i in self.present:
            m |= 1 << (i - 1)
        return m

    def __contains__(self, i) -> bool:
        return i in self.present

    def __len__(self) -> int:
        return len(self.present)

    def __le__(self, other: "NailState") -> bool:
        return self.present <= other.present

    def sorted(self) -> list:
        return sorted(self.present)


def all_states(rank: int) -> Iterator[NailState]:
    for mask in range(1 << rank):
        yield NailState.from_mask(rank, mask)


def subsets(items: Sequence[int]) -> Iterator[tuple]:
    for r in range(len(items) + 1):
        yield from combinations(items, r)


# ---------------------------------------------------------------------------
# As-written expressions


class WordExpr:
    """Base class for as-written word expressions.

    Nodes are immutable once built.  The reduced form and the written
    length are computed on first use and cached on the node.
    """

    __slots__ = ("_flat", "_wlen", "_cnt", "_maxi")

    def __init__(self):
        self._flat = None
        self._wlen = None
        self._cnt = None
        self._maxi = None

    # subclasses implement _written and _max_index

    def flatten(self, rank: int | None = None) -> Word:
        if rank is None:
            rank = self.max_index()
        elif self.max_index() > rank:
            raise RankMismatch(f"expression uses x{self.max_index()} but rank is {rank}")
        return Word(self.reduced_letters(), rank)

    def reduced_letters(self) -> tuple:
        if self._flat is None:
            self._flat = _evaluate(self, None, {})
        return self._flat

    def written_length(self) -> int:
        if self._wlen is None:
            self._wlen = self._written()
        return self._wlen

    def max_index(self) -> int:
        if self._maxi is None:
            self._maxi = self._max_index()
        return self._maxi

    def _counts(self) -> Counter:
        if self._cnt is None:
            self._cnt = Counter(self.reduced_letters())
        return self._cnt

    def expand(self) -> Iterator[int]:
        """The written letters, without any cancellation."""
        yield from _expand(self, False)

    def __eq__(self, other):
        if not isinstance(other, WordExpr):
            return NotImplemented
        return _struct_eq(self, other, set())

    def __hash__(self):
        return hash((type(self).__name__, self.written_length(), self.reduced_letters()))

    def __str__(self) -> str:
        return format_letters(self.expand())


class Leaf(WordExpr):
    __slots__ = ("letter",)

    def __init__(self, a: int):
        super().__init__()
        if a == 0:
            raise InputError("letter 0 is not a generator")
        self.letter = a

    def _written(self):
        return 1

    def _max_index(self):
        return abs(self.letter)

    def __repr__(self):
        return f"Leaf({self.letter})"


class Concat(WordExpr):
    __slots__ = ("children",)

    def __init__(self, *children: WordExpr):
        super().__init__()
        self.children = tuple(children)

    def _written(self):
        return sum(c.written_length() for c in self.children)

    def _max_index(self):
        return max((c.max_index() for c in self.children), default=0)

    def __repr__(self):
        return f"Concat{self.children!r}"


class Inverse(WordExpr):
    __slots__ = ("child",)

    def __init__(self, child: WordExpr):
        super().__init__()
        self.child = child

    def _written(self):
        return self.child.written_length()

    def _max_index(self):
        return self.child.max_index()

    def __repr__(self):
        return f"Inverse({self.child!r})"


class Power(WordExpr):
    __slots__ = ("child", "exponent")

    def __init__(self, child: WordExpr, exponent: int):
        super().__init__()
        self.child = child
        self.exponent = int(exponent)

    def _written(self):
        return abs(self.exponent) * self.child.written_length()

    def _max_index(self):
        return self.child.max_index() if self.exponent else 0

    def __repr__(self):
        return f"Power({self.child!r}, {self.exponent})"


IDENTITY = Concat()


def gen(index: int, sign: int = 1) -> Leaf:
    return Leaf(letter(index, sign))


def commutator(a: WordExpr, b: WordExpr) -> Concat:
    """``a b a^-1 b^-1`` with shared operand nodes."""
    return Concat(a, b, Inverse(a), Inverse(b))


def from_word(w: Union[Word, Sequence[int]]) -> WordExpr:
    letters = w.letters if isinstance(w, Word) else tuple(w)
    if len(letters) == 1:
        return Leaf(letters[0])
    return Concat(*(Leaf(a) for a in letters))


def _evaluate(node: WordExpr, mask: int | None, memo: dict) -> tuple:
    if mask is None and node._flat is not None:
        return node._flat
    key = id(node)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if isinstance(node, Leaf):
        a = node.letter
        out = (a,) if mask is None or (mask >> (abs(a) - 1)) & 1 else ()
    elif isinstance(node, Concat):
        out = ()
        for c in node.children:
            out = _join(out, _evaluate(c, mask, memo))
    elif isinstance(node, Inverse):
        out = _inv(_evaluate(node.child, mask, memo))
    elif isinstance(node, Power):
        base = _evaluate(node.child, mask, memo)
        if node.exponent < 0:
            base = _inv(base)
        out = _repeat(base, abs(node.exponent))
    else:
        raise TypeError(f"not a WordExpr node: {node!r}")
    memo[key] = out
    if mask is None:
        node._flat = out
    return out


def _expand(node: WordExpr, inverted: bool) -> Iterator[int]:
    if isinstance(node, Leaf):
        yield -node.letter if inverted else node.letter
    elif isinstance(node, Concat):
        kids = reversed(node.children) if inverted else node.children
        for c in kids:
            yield from _expand(c, inverted)
    elif isinstance(node, Inverse):
        yield from _expand(node.child, not inverted)
    elif isinstance(node, Power):
        inv = inverted != (node.exponent < 0)
        for _ in range(abs(node.exponent)):
            yield from _expand(node.child, inv)


def _struct_eq(a: WordExpr, b: WordExpr, seen: set) -> bool:
    if a is b or (id(a), id(b)) in seen:
        return True
    if type(a) is not type(b):
        return False
    if isinstance(a, Leaf):
        ok = a.letter == b.letter
    elif isinstance(a, Concat):
        ok = len(a.children) == len(b.children) and all(
            _struct_eq(x, y, seen) for x, y in zip(a.children, b.children)
        )
    elif isinstance(a, Inverse):
        ok = _struct_eq(a.child, b.child, seen)
    else:
        ok = a.exponent == b.exponent and _struct_eq(a.child, b.child, seen)
    if ok:
        seen.add((id(a), id(b)))
    return ok


def written_length(e: WordExpr) -> int:
    return e.written_length()


def flatten(e: WordExpr, rank: int | None = None) -> Word:
    return e.flatten(rank)


def is_identity(w: Union[Word, WordExpr]) -> bool:
    if isinstance(w, WordExpr):
        return not w.reduced_letters()
    return not w.letters


def quotient_letters(w: Union[Word, WordExpr], mask: int) -> tuple:
    """Reduced letters of the image of ``w`` with every generator whose bit
    is clear in ``mask`` sent to the identity."""
    if isinstance(w, WordExpr):
        return _evaluate(w, mask, {})
    return _reduce_tuple(w.letters, mask)


def quotient(w: Union[Word, WordExpr], s: NailState) -> Word:
    rank = w.rank if isinstance(w, Word) else None
    if rank is not None and rank != s.rank:
        raise RankMismatch(f"word rank {rank} != state rank {s.rank}")
    if rank is None and w.max_index() > s.rank:
        raise RankMismatch(f"expression uses x{w.max_index()} but state rank is {s.rank}")
    return Word(quotient_letters(w, s.mask), s.rank)
