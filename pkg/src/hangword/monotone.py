"""Monotone boolean hanging rules: which sets of nails must hold the picture.

Input ``i`` is true when nail ``i`` is present; the output is true when the
picture keeps hanging.  Four representations are supported and all of them
evaluate on a bitmask of present nails (bit ``i-1`` is nail ``i``).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Sequence, Union

from .errors import FormulaSyntaxError, InputError, RankMismatch, UnrealizableError
from .words import NailState


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _mask_of(items) -> int:
    m = 0
    for i in items:
        m |= 1 << (i - 1)
    return m


def _set_of(mask: int) -> tuple:
    out, i = [], 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def canonical_order(sets) -> list:
    """Sort subsets by size, then lexicographically."""
    return sorted((tuple(sorted(s)) for s in sets), key=lambda s: (len(s), s))


class MonotoneFn:
    """Common interface; ``rank`` is the number of nails."""

    rank: int
    kind: str

    def evaluate(self, s: Union[NailState, int]) -> bool:
        if isinstance(s, NailState):
            if s.rank != self.rank:
                raise RankMismatch(f"state rank {s.rank} != function rank {self.rank}")
            s = s.mask
        return self.evaluate_mask(s)

    def evaluate_mask(self, mask: int) -> bool:
        raise NotImplementedError

    def truth_table(self) -> "TruthTable":
        return TruthTable(self.rank, tuple(self.evaluate_mask(m) for m in range(1 << self.rank)))

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Threshold(MonotoneFn):
    """Hangs iff at least ``k`` of the ``rank`` nails remain."""

    rank: int
    k: int
    kind = "threshold"

    def __post_init__(self):
        if not 1 <= self.k <= self.rank:
            raise UnrealizableError(
                f"threshold needs 1 <= k <= n, got k={self.k}, n={self.rank}"
            )

    def evaluate_mask(self, mask):
        return _popcount(mask) >= self.k

    def to_json(self):
        return {"n": self.rank, "kind": self.kind, "k": self.k}


@dataclass(frozen=True)
class MinimalSets(MonotoneFn):
    """Hangs iff some listed set of nails is entirely present."""

    rank: int
    sets: tuple
    kind = "minimal_sets"

    def __post_init__(self):
        sets = canonical_order(set(tuple(sorted(set(s))) for s in self.sets))
        if not sets:
            raise UnrealizableError("no minimal sets: the picture would never hang")
        for s in sets:
            if not s:
                raise UnrealizableError("empty minimal set: f(∅) must be false")
            for i in s:
                if not 1 <= i <= self.rank:
                    raise InputError(f"nail {i} outside 1..{self.rank}")
        for a, b in combinations(sets, 2):
            if set(a) <= set(b) or set(b) <= set(a):
                raise InputError(f"not an antichain: {a} and {b}")
        object.__setattr__(self, "sets", tuple(sets))
        object.__setattr__(self, "_masks", tuple(_mask_of(s) for s in sets))

    def evaluate_mask(self, mask):
        return any(m & mask == m for m in self._masks)

    def to_json(self):
        return {"n": self.rank, "kind": self.kind, "sets": [list(s) for s in self.sets]}


# Formula syntax tree


@dataclass(frozen=True)
class Var:
    index: int

    def eval(self, mask):
        return bool(mask >> (self.index - 1) & 1)

    def variables(self):
        return {self.index}

    def __str__(self):
        return f"x{self.index}"


@dataclass(frozen=True)
class And:
    children: tuple

    def eval(self, mask):
        return all(c.eval(mask) for c in self.children)

    def variables(self):
        return set().union(*(c.variables() for c in self.children))

    def __str__(self):
        return " & ".join(f"({c})" if isinstance(c, Or) else str(c) for c in self.children)


@dataclass(frozen=True)
class Or:
    children: tuple

    def eval(self, mask):
        return any(c.eval(mask) for c in self.children)

    def variables(self):
        return set().union(*(c.variables() for c in self.children))

    def __str__(self):
        return " | ".join(str(c) for c in self.children)


Node = Union[Var, And, Or]


@dataclass(frozen=True)
class Formula(MonotoneFn):
    rank: int
    tree: Node
    kind = "formula"

    def __post_init__(self):
        _check_tree(self.tree, self.rank)

    def evaluate_mask(self, mask):
        return self.tree.eval(mask)

    def to_json(self):
        return {"n": self.rank, "kind": self.kind, "formula": str(self.tree)}


def _check_tree(node, rank):
    if isinstance(node, Var):
        if not 1 <= node.index <= rank:
            raise InputError(f"variable x{node.index} outside 1..{rank}")
    elif isinstance(node, (And, Or)):
        if len(node.children) < 2:
            raise InputError("AND/OR nodes need at least two children")
        for c in node.children:
            _check_tree(c, rank)
    else:
        raise InputError(f"unknown formula node {node!r}")


@dataclass(frozen=True)
class TruthTable(MonotoneFn):
    """Entry ``bits[mask]`` is the value on the nail set encoded by ``mask``."""

    rank: int
    bits: tuple
    kind = "table"

    def __post_init__(self):
        bits = tuple(bool(b) for b in self.bits)
        object.__setattr__(self, "bits", bits)
        ok, reason = check_realizable(bits, self.rank)
        if not ok:
            raise UnrealizableError(reason)

    def evaluate_mask(self, mask):
        return self.bits[mask]

    @classmethod
    def from_bitstring(cls, text: str, rank: int | None = None) -> "TruthTable":
        text = text.strip()
        if any(c not in "01" for c in text):
            raise InputError("truth table bitstring may only contain 0 and 1")
        if rank is None:
            rank = len(text).bit_length() - 1
        if len(text) != 1 << rank:
            raise InputError(f"truth table for n={rank} needs {1 << rank} bits, got {len(text)}")
        return cls(rank, tuple(c == "1" for c in text))

    def bitstring(self) -> str:
        return "".join("1" if b else "0" for b in self.bits)

    def to_json(self):
        return {"n": self.rank, "kind": self.kind, "table": self.bitstring()}


class Realizability(NamedTuple):
    ok: bool
    reason: str


def check_realizable(table: Union[Sequence, str], rank: int | None = None) -> Realizability:
    """Whether a raw truth table is nontrivial monotone.

    ``table`` is indexed by nail bitmask; a string of 0/1 is accepted.
    """
    if isinstance(table, str):
        bits = [c == "1" for c in table]
    else:
        bits = [bool(b) for b in table]
    if rank is None:
        rank = len(bits).bit_length() - 1
    if len(bits) != 1 << rank:
        return Realizability(False, f"table length {len(bits)} is not 2^{rank}")
    if bits[0]:
        return Realizability(False, "f(∅) must be false")
    if not bits[-1]:
        return Realizability(False, "f(full) must be true")
    for mask in range(1 << rank):
        if bits[mask]:
            for i in range(rank):
                if not bits[mask | 1 << i]:
                    return Realizability(False, "not monotone")
    return Realizability(True, "")


def minimal_true_sets(f: MonotoneFn) -> list:
    """Inclusion-minimal nail sets on which ``f`` is true, canonically ordered."""
    if isinstance(f, MinimalSets):
        return [tuple(s) for s in f.sets]
    if isinstance(f, Threshold):
        return list(combinations(range(1, f.rank + 1), f.k))
    n = f.rank
    if f.evaluate_mask(0) or not f.evaluate_mask((1 << n) - 1):
        raise UnrealizableError("constant function has no minimal sets")
    found: list[int] = []
    for mask in sorted(range(1 << n), key=_popcount):
        if f.evaluate_mask(mask) and not any(m & mask == m for m in found):
            for i in range(n):
                if mask >> i & 1 and f.evaluate_mask(mask & ~(1 << i)):
                    raise UnrealizableError("not monotone")
            found.append(mask)
    return canonical_order(_set_of(m) for m in found)


def to_minimal_sets(f: MonotoneFn) -> MinimalSets:
    return MinimalSets(f.rank, tuple(minimal_true_sets(f)))


def to_formula(f: MonotoneFn) -> Formula:
    """Disjunctive normal form over the minimal true sets."""
    if isinstance(f, Formula):
        return f
    terms = []
    for s in minimal_true_sets(f):
        vars_ = tuple(Var(i) for i in s)
        terms.append(vars_[0] if len(vars_) == 1 else And(vars_))
    tree = terms[0] if len(terms) == 1 else Or(tuple(terms))
    return Formula(f.rank, tree)


# Parsing
#   expr := term { "|" term }
#   term := atom { "&" atom }
#   atom := var | "(" expr ")"
#   var  := "x" digits


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise FormulaSyntaxError(f"expected {ch!r}, found {found}", self.pos)
        self.pos += 1

    def expr(self):
        items = [self.term()]
        while self.peek() == "|":
            self.pos += 1
            items.append(self.term())
        return items[0] if len(items) == 1 else Or(tuple(items))

    def term(self):
        items = [self.atom()]
        while self.peek() == "&":
            self.pos += 1
            items.append(self.atom())
        return items[0] if len(items) == 1 else And(tuple(items))

    def atom(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            node = self.expr()
            self.expect(")")
            return node
        if ch == "x":
            start = self.pos
            self.pos += 1
            end = self.pos
            while end < len(self.text) and self.text[end].isdigit():
                end += 1
            if end == self.pos:
                raise FormulaSyntaxError("expected digits after 'x'", self.pos)
            index = int(self.text[self.pos:end])
            self.pos = end
            if index == 0:
                raise FormulaSyntaxError("variable index must be >= 1", start)
            return Var(index)
        found = repr(ch) if ch else "end of input"
        raise FormulaSyntaxError(f"expected variable or '(', found {found}", self.pos)


def parse_tree(text: str) -> Node:
    p = _Parser(text)
    node = p.expr()
    if p.peek():
        raise FormulaSyntaxError(f"unexpected {p.peek()!r}", p.pos)
    return node


def parse_formula(text: str, n: int | None = None) -> Formula:
    """Parse ``text`` into a :class:`Formula`; ``n`` defaults to the largest
    variable index used."""
    tree = parse_tree(text)
    used = max(tree.variables())
    if n is None:
        n = used
    elif used > n:
        raise InputError(f"variable x{used} exceeds declared n={n}")
    return Formula(n, tree)


def from_json(data: dict) -> MonotoneFn:
    try:
        n = int(data["n"])
        kind = data["kind"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"function descriptor needs 'n' and 'kind': {exc}") from None
    if kind == "threshold":
        return Threshold(n, int(data["k"]))
    if kind == "minimal_sets":
        return MinimalSets(n, tuple(tuple(s) for s in data["sets"]))
    if kind == "formula":
        return parse_formula(data["formula"], n)
    if kind == "table":
        return TruthTable.from_bitstring(data["table"], n)
    raise InputError(f"unknown function kind {kind!r}")


def enumerate_nontrivial_monotone(n: int):
    """Yield every nontrivial monotone truth table on ``n`` nails.

    Grows upward-closed families one minimal set at a time; fine for n <= 4.
    """
    size = 1 << n
    full = (1 << size) - 1
    # A monotone function is its set of true masks, an up-set.
    up = [0] * size
    for m in range(size):
        u = 0
        for t in range(size):
            if t & m == m:
                u |= 1 << t
        up[m] = u
    seen = set()
    stack = [0]
    while stack:
        fam = stack.pop()
        for m in range(1, size):
            new = fam | up[m]
            if new not in seen:
                seen.add(new)
                stack.append(new)
    for fam in sorted(seen):
        if fam != full and not fam & 1:
            yield TruthTable(n, tuple(bool(fam >> m & 1) for m in range(size)))
