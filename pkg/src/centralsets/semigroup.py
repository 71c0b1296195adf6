"""Finite semigroups given by Cayley tables, and dense element subsets.

Elements are the integers ``0..n-1``; names are cosmetic labels used only
for parsing and printing.  Subsets are stored as bitmasks.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .errors import (
    ParseError,
    UniverseMismatch,
    UnsupportedStructureError,
    ValidationError,
)

__all__ = [
    "ElementSet",
    "FiniteSemigroup",
    "ValidationReport",
    "IntegerAddition",
    "INTEGERS",
    "parse_semigroup",
    "format_semigroup",
    "validate_table",
    "translate_preimage",
    "is_subgroup",
    "SubgroupCertificate",
    "enumerate_semigroups",
]


def _bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


@dataclass(frozen=True)
class ElementSet:
    """A subset of ``{0, ..., universe-1}``."""

    universe: int
    mask: int = 0

    def __post_init__(self):
        if self.universe < 0:
            raise ValueError("universe must be non-negative")
        if self.mask < 0 or self.mask >> self.universe:
            raise ValueError(f"members out of range for universe {self.universe}")

    @classmethod
    def of(cls, universe: int, members: Iterable[int]) -> "ElementSet":
        mask = 0
        for m in members:
            if not 0 <= m < universe:
                raise ValueError(f"element {m} not in [0,{universe})")
            mask |= 1 << m
        return cls(universe, mask)

    @classmethod
    def full(cls, universe: int) -> "ElementSet":
        return cls(universe, (1 << universe) - 1)

    @classmethod
    def empty(cls, universe: int) -> "ElementSet":
        return cls(universe, 0)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(_bits(self.mask))

    def __iter__(self):
        return _bits(self.mask)

    def __len__(self):
        return bin(self.mask).count("1")

    def __bool__(self):
        return self.mask != 0

    def __contains__(self, x) -> bool:
        return isinstance(x, int) and 0 <= x < self.universe and bool(self.mask >> x & 1)

    def _check(self, other: "ElementSet"):
        if not isinstance(other, ElementSet):
            raise TypeError(f"expected ElementSet, got {type(other).__name__}")
        if other.universe != self.universe:
            raise UniverseMismatch(f"universes differ: {self.universe} vs {other.universe}")

    def __or__(self, other):
        self._check(other)
        return ElementSet(self.universe, self.mask | other.mask)

    def __and__(self, other):
        self._check(other)
        return ElementSet(self.universe, self.mask & other.mask)

    def __sub__(self, other):
        self._check(other)
        return ElementSet(self.universe, self.mask & ~other.mask)

    def complement(self) -> "ElementSet":
        return ElementSet(self.universe, ((1 << self.universe) - 1) & ~self.mask)

    def issubset(self, other: "ElementSet") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    __le__ = issubset

    def __lt__(self, other):
        return self.issubset(other) and self.mask != other.mask

    def supersets(self) -> Iterator["ElementSet"]:
        """All supersets within the universe, smallest first, then by mask."""
        free = [i for i in range(self.universe) if not self.mask >> i & 1]
        for size in range(len(free) + 1):
            for extra in itertools.combinations(free, size):
                m = self.mask
                for i in extra:
                    m |= 1 << i
                yield ElementSet(self.universe, m)

    def subsets(self, nonempty: bool = False) -> Iterator["ElementSet"]:
        """All subsets, by size then lexicographically on sorted members."""
        mem = self.members
        for size in range(1 if nonempty else 0, len(mem) + 1):
            for combo in itertools.combinations(mem, size):
                yield ElementSet.of(self.universe, combo)

    def __repr__(self):
        return f"ElementSet({self.universe}, {{{','.join(map(str, self))}}})"


@dataclass(frozen=True)
class ValidationReport:
    associative: bool
    counterexample: Optional[tuple[int, int, int]]
    identity: Optional[int]
    commutative: bool


def validate_table(table: Sequence[Sequence[int]]) -> ValidationReport:
    """Exhaustive n^3 associativity check plus identity/commutativity."""
    n = len(table)
    for row in table:
        if len(row) != n:
            raise ValidationError("table is not square")
        for v in row:
            if not (isinstance(v, int) and 0 <= v < n):
                raise ValidationError(f"table entry {v!r} outside [0,{n})")
    counterexample = None
    for x in range(n):
        tx = table[x]
        for y in range(n):
            xy = tx[y]
            ty = table[y]
            for z in range(n):
                if table[xy][z] != tx[ty[z]]:
                    counterexample = (x, y, z)
                    break
            if counterexample:
                break
        if counterexample:
            break
    identity = None
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            identity = e
            break
    commutative = all(table[x][y] == table[y][x] for x in range(n) for y in range(x))
    return ValidationReport(counterexample is None, counterexample, identity, commutative)


@dataclass(frozen=True, eq=False)
class FiniteSemigroup:
    """An associative Cayley table.  ``table[x][y]`` is ``x*y``."""

    table: tuple[tuple[int, ...], ...]
    names: Optional[tuple[str, ...]] = None
    identity: Optional[int] = field(init=False)
    commutative: bool = field(init=False)

    def __init__(self, table, names=None):
        table = tuple(tuple(int(v) for v in row) for row in table)
        if not table:
            raise ValidationError("semigroup must have at least one element")
        report = validate_table(table)
        if not report.associative:
            x, y, z = report.counterexample
            raise ValidationError(
                f"not associative: ({x}*{y})*{z} != {x}*({y}*{z})",
                counterexample=report.counterexample,
            )
        if names is not None:
            names = tuple(str(s) for s in names)
            if len(names) != len(table) or len(set(names)) != len(names):
                raise ValidationError("names must be n distinct labels")
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "identity", report.identity)
        object.__setattr__(self, "commutative", report.commutative)

    def __eq__(self, other):
        return isinstance(other, FiniteSemigroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteSemigroup(order={self.order})"

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def product(self, xs: Iterable[int]) -> int:
        it = iter(xs)
        try:
            acc = next(it)
        except StopIteration:
            if self.identity is None:
                raise ValueError("empty product in a semigroup without identity")
            return self.identity
        for x in it:
            acc = self.table[acc][x]
        return acc

    def full(self) -> ElementSet:
        return ElementSet.full(self.order)

    def empty(self) -> ElementSet:
        return ElementSet.empty(self.order)

    def subset(self, members: Iterable[int]) -> ElementSet:
        return ElementSet.of(self.order, members)

    def set_product(self, A: ElementSet, B: ElementSet) -> ElementSet:
        mask = 0
        for a in A:
            row = self.table[a]
            for b in B:
                mask |= 1 << row[b]
        return ElementSet(self.order, mask)

    def left_translate(self, x: int, A: ElementSet) -> ElementSet:
        """x*A"""
        row = self.table[x]
        return ElementSet.of(self.order, {row[a] for a in A})

    def right_translate(self, A: ElementSet, x: int) -> ElementSet:
        """A*x"""
        return ElementSet.of(self.order, {self.table[a][x] for a in A})

    def is_group(self) -> bool:
        if self.identity is None:
            return False
        e = self.identity
        return all(any(self.table[x][y] == e for y in self.elements) for x in self.elements)

    def inverse(self, x: int) -> int:
        e = self.identity
        if e is None:
            raise UnsupportedStructureError("inverse requires an identity")
        for y in self.elements:
            if self.table[x][y] == e and self.table[y][x] == e:
                return y
        raise UnsupportedStructureError(f"element {x} has no inverse")

    def label(self, x: int) -> str:
        return self.names[x] if self.names else str(x)

    def format_set(self, A: ElementSet) -> str:
        if not A:
            return "{}"
        return ",".join(self.label(x) for x in A)

    def parse_set(self, literal: str) -> ElementSet:
        """Parse "0,2,4" (indices or names); "" and "{}" denote the empty set."""
        text = literal.strip()
        if text.startswith("{") and text.endswith("}"):
            text = text[1:-1].strip()
        if not text:
            return self.empty()
        lookup = {name: i for i, name in enumerate(self.names)} if self.names else {}
        out = []
        for tok in text.split(","):
            tok = tok.strip()
            if tok in lookup:
                out.append(lookup[tok])
            elif re.fullmatch(r"\d+", tok) and int(tok) < self.order:
                out.append(int(tok))
            else:
                raise ParseError(f"unknown element {tok!r}")
        return self.subset(out)

    def parse_element(self, token: str) -> int:
        s = self.parse_set(token)
        if len(s) != 1:
            raise ParseError(f"expected a single element, got {token!r}")
        return s.members[0]


class IntegerAddition:
    """(Z,+) exposing the small part of the FiniteSemigroup API used by the
    product combinators, so windowed integer sequences can reuse them."""

    identity = 0
    commutative = True

    def mul(self, x: int, y: int) -> int:
        return x + y

    def product(self, xs: Iterable[int]) -> int:
        return sum(xs)

    def inverse(self, x: int) -> int:
        return -x

    def __repr__(self):
        return "INTEGERS"


INTEGERS = IntegerAddition()


def parse_semigroup(text: str) -> FiniteSemigroup:
    lines = text.splitlines()
    if len(lines) == 1 and "/" in lines[0]:
        lines = lines[0].split("/")
    rows: list[tuple[int, list[int]]] = []
    names = None
    n = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.lower().startswith("names:"):
            if names is not None:
                raise ParseError("duplicate names line", lineno)
            names = line.split(":", 1)[1].split()
            continue
        try:
            values = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"expected integers, got {line!r}", lineno) from None
        if n is None:
            if len(values) != 1 or values[0] < 1:
                raise ParseError("first line must be the order n >= 1", lineno)
            n = values[0]
            continue
        if len(values) != n:
            raise ParseError(f"row has {len(values)} entries, expected {n}", lineno)
        bad = [v for v in values if not 0 <= v < n]
        if bad:
            raise ParseError(f"entry {bad[0]} outside [0,{n})", lineno)
        rows.append((lineno, values))
    if n is None:
        raise ParseError("missing order line")
    if len(rows) != n:
        raise ParseError(f"expected {n} rows, found {len(rows)}")
    if names is not None and len(names) != n:
        raise ParseError(f"names line has {len(names)} labels, expected {n}")
    return FiniteSemigroup([r for _, r in rows], names=names)


def format_semigroup(S: FiniteSemigroup, comment: Optional[str] = None) -> str:
    out = []
    if comment:
        out.append(f"# {comment}")
    out.append(str(S.order))
    out.extend(" ".join(map(str, row)) for row in S.table)
    if S.names:
        out.append("names: " + " ".join(S.names))
    return "\n".join(out) + "\n"


def translate_preimage(S: FiniteSemigroup, B: ElementSet, A: ElementSet) -> ElementSet:
    """B^{-1}A = {y : t*y in A for some t in B}."""
    if B.universe != S.order or A.universe != S.order:
        raise UniverseMismatch("sets do not live in this semigroup")
    mask = 0
    amask = A.mask
    for t in B:
        row = S.table[t]
        for y in S.elements:
            if amask >> row[y] & 1:
                mask |= 1 << y
    return ElementSet(S.order, mask)


@dataclass(frozen=True)
class SubgroupCertificate:
    identity: Optional[int] = None
    inverses: Optional[dict] = None
    failure: Optional[str] = None


def is_subgroup(S: FiniteSemigroup, G: ElementSet, require_normal: bool = False):
    """Returns ``(ok, certificate)``.  Normality is only defined when S is a group."""
    if G.universe != S.order:
        raise UniverseMismatch("subset does not live in this semigroup")
    if require_normal and not S.is_group():
        raise UnsupportedStructureError("normality check requires the ambient to be a group")
    if not G:
        return False, SubgroupCertificate(failure="empty")
    for x in G:
        for y in G:
            if S.mul(x, y) not in G:
                return False, SubgroupCertificate(failure=f"not closed: {x}*{y}={S.mul(x, y)}")
    e = next((c for c in G if all(S.mul(c, g) == g and S.mul(g, c) == g for g in G)), None)
    if e is None:
        return False, SubgroupCertificate(failure="no identity in G")
    inverses = {}
    for g in G:
        inv = next((h for h in G if S.mul(g, h) == e and S.mul(h, g) == e), None)
        if inv is None:
            return False, SubgroupCertificate(e, failure=f"{g} has no inverse in G")
        inverses[g] = inv
    if require_normal:
        for s in S.elements:
            s_inv = S.inverse(s)
            for g in G:
                c = S.mul(S.mul(s, g), s_inv)
                if c not in G:
                    return False, SubgroupCertificate(e, inverses, f"not normal: {s}*{g}*{s}^-1={c}")
    return True, SubgroupCertificate(e, inverses)


def enumerate_semigroups(
    order: int, predicate: Optional[Callable[[FiniteSemigroup], bool]] = None
) -> Iterator[FiniteSemigroup]:
    """Every associative table of the given order (labelled, not up to isomorphism).

    Cells are filled in row-major order and each partial table is pruned as
    soon as a fully-determined triple violates associativity.
    """
    if order not in (1, 2, 3):
        raise ValueError("enumerate_semigroups is limited to order <= 3; use the bundled corpus")
    n = order
    cells = [(x, y) for x in range(n) for y in range(n)]
    table = [[-1] * n for _ in range(n)]

    def consistent(x, y):
        # only triples that involve the freshly assigned cell can have changed
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    ab = table[a][b]
                    bc = table[b][c]
                    if ab < 0 or bc < 0:
                        continue
                    l = table[ab][c]
                    r = table[a][bc]
                    if l >= 0 and r >= 0 and l != r:
                        return False
        return True

    def fill(k):
        if k == len(cells):
            S = FiniteSemigroup(table)
            if predicate is None or predicate(S):
                yield S
            return
        x, y = cells[k]
        for v in range(n):
            table[x][y] = v
            if consistent(x, y):
                yield from fill(k + 1)
        table[x][y] = -1

    yield from fill(0)
