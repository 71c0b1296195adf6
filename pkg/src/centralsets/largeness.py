"""Largeness notions decided on finite semigroups, and the product combinators.

On a finite S the quantifier "for every finite F ⊆ S" is strongest at
F = S, so thickness and piecewise syndeticity reduce to statements about
S*x.  J-sets and IP_r* sets quantify over sequences, which we only see
truncated, hence the bounded verdicts.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from .errors import BoundsError, PreconditionError, SearchCancelled
from .ideals import idempotents, kernel
from .semigroup import ElementSet, FiniteSemigroup, translate_preimage

__all__ = [
    "Status",
    "Verdict",
    "SequenceFamily",
    "JWitness",
    "CancelToken",
    "PiecewiseSyndetic",
    "is_thick",
    "is_syndetic",
    "is_piecewise_syndetic",
    "is_central",
    "fp_values",
    "fp_set",
    "zfp_values",
    "zfp_k",
    "eval_x",
    "is_j_set_bounded",
    "find_j_witness",
    "is_ip_r_star_bounded",
]


class Status(enum.Enum):
    ESTABLISHED = "Established"
    REFUTED_WITHIN_BOUNDS = "RefutedWithinBounds"
    REFUTED_EXACTLY = "RefutedExactly"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Verdict:
    status: Status
    witness: Any = None
    bounds: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status is Status.ESTABLISHED and self.witness is None:
            raise ValueError("an Established verdict needs a witness")

    @property
    def established(self) -> bool:
        return self.status is Status.ESTABLISHED

    def __bool__(self):
        return self.established


class CancelToken:
    """Cooperative cancellation flag polled by the long searches."""

    def __init__(self):
        self.cancelled = False

    def cancel(self):
        self.cancelled = True

    def check(self, trace=None):
        if self.cancelled:
            raise SearchCancelled("search cancelled", trace=trace)


@dataclass(frozen=True)
class SequenceFamily:
    """Finitely many sequences, all truncated at the same length L.

    Positions are 1-based when passed to ``at``, matching f(1), f(2), ...
    """

    sequences: tuple[tuple[int, ...], ...]

    def __init__(self, sequences):
        seqs = tuple(tuple(s) for s in sequences)
        if not seqs:
            raise ValueError("a sequence family must be nonempty")
        L = len(seqs[0])
        if L < 1:
            raise ValueError("sequences must have length >= 1")
        if any(len(s) != L for s in seqs):
            raise ValueError("all sequences in a family must have equal length")
        object.__setattr__(self, "sequences", seqs)

    @property
    def L(self) -> int:
        return len(self.sequences[0])

    def __len__(self):
        return len(self.sequences)

    def __iter__(self):
        return iter(self.sequences)

    def check_in(self, S: FiniteSemigroup):
        for s in self.sequences:
            for v in s:
                if not 0 <= v < S.order:
                    raise BoundsError(f"sequence entry {v} is not an element of S")

    def shifted(self, offset: int) -> "SequenceFamily":
        """g(n) = f(n + offset), the reindexing that pushes indices upward."""
        if offset >= self.L:
            raise BoundsError(f"shift {offset} leaves nothing of length {self.L}")
        return SequenceFamily(s[offset:] for s in self.sequences)

    def union(self, other: "SequenceFamily") -> "SequenceFamily":
        seen = list(self.sequences)
        seen.extend(s for s in other.sequences if s not in seen)
        return SequenceFamily(seen)


@dataclass(frozen=True)
class JWitness:
    m: int
    a: tuple[int, ...]
    t: tuple[int, ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be positive")
        if len(self.a) != self.m + 1:
            raise ValueError(f"need m+1={self.m + 1} coefficients, got {len(self.a)}")
        if len(self.t) != self.m:
            raise ValueError(f"need m={self.m} indices, got {len(self.t)}")
        if self.t[0] < 1 or any(x >= y for x, y in zip(self.t, self.t[1:])):
            raise ValueError(f"index tuple {self.t} must be strictly increasing and positive")


def is_thick(S: FiniteSemigroup, A: ElementSet):
    """Returns ``(True, x)`` with S*x ⊆ A, or ``(False, None)``."""
    full = S.full()
    for x in S.elements:
        if S.right_translate(full, x) <= A:
            return True, x
    return False, None


def _preimage_masks(S: FiniteSemigroup, A: ElementSet) -> list[int]:
    return [translate_preimage(S, S.subset([t]), A).mask for t in S.elements]


def is_syndetic(S: FiniteSemigroup, A: ElementSet):
    """Returns ``(True, G)`` with G^{-1}A = S and G of least size, else ``(False, None)``."""
    pre = _preimage_masks(S, A)
    full = (1 << S.order) - 1
    union = 0
    for m in pre:
        union |= m
    if union != full:
        return False, None
    for size in range(1, S.order + 1):
        for G in itertools.combinations(S.elements, size):
            mask = 0
            for t in G:
                mask |= pre[t]
            if mask == full:
                return True, S.subset(G)
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class PiecewiseSyndetic:
    combinatorial: bool
    witness: Optional[tuple[ElementSet, int]]
    algebraic: bool

    @property
    def agree(self) -> bool:
        return self.combinatorial == self.algebraic


def _left_orbits(S: FiniteSemigroup) -> list[int]:
    """Masks of S*x for every x."""
    return [S.right_translate(S.full(), x).mask for x in S.elements]


def _pws_combinatorial(S, A, candidates, region_masks):
    """Least G ⊆ candidates (by size, then lexicographic) and first x whose
    region S*x (or H*x) lies inside G^{-1}A."""
    pre = _preimage_masks(S, A)
    cover_all = 0
    for t in candidates:
        cover_all |= pre[t]
    if not any(r & ~cover_all == 0 for _, r in region_masks):
        return None
    for size in range(1, len(candidates) + 1):
        for G in itertools.combinations(candidates, size):
            cover = 0
            for t in G:
                cover |= pre[t]
            for x, r in region_masks:
                if r & ~cover == 0:
                    return S.subset(G), x
    return None


def is_piecewise_syndetic(S: FiniteSemigroup, A: ElementSet) -> PiecewiseSyndetic:
    regions = list(enumerate(_left_orbits(S)))
    found = _pws_combinatorial(S, A, list(S.elements), regions)
    algebraic = bool(A & kernel(S))
    return PiecewiseSyndetic(found is not None, found, algebraic)


def is_central(S: FiniteSemigroup, A: ElementSet):
    """Returns ``(True, e)`` for the least minimal idempotent e in A."""
    hits = A & idempotents(S) & kernel(S)
    if hits:
        return True, hits.members[0]
    return False, None


def _check_range(x: Sequence, frm: int, to: int):
    if not 1 <= frm <= to <= len(x):
        raise BoundsError(f"need 1 <= from <= to <= {len(x)}, got from={frm}, to={to}")


def fp_values(S, x: Sequence[int], frm: int = 1, to: Optional[int] = None) -> set:
    """Finite products x_{i1}*...*x_{ik}, i1<...<ik in [frm, to], as a Python set."""
    to = len(x) if to is None else to
    _check_range(x, frm, to)
    return zfp_values(S, [[v] for v in x[frm - 1:to]])


def zfp_values(S, choices: Sequence[Sequence[int]]) -> set:
    """Products over nonempty index sets with one factor chosen per index,
    factors taken in increasing index order."""
    mul = S.mul
    acc: set = set()
    for options in choices:
        fresh = set(options)
        for p in acc:
            for c in options:
                fresh.add(mul(p, c))
        acc |= fresh
    return acc


def _as_set(S, values):
    if isinstance(S, FiniteSemigroup):
        return S.subset(values)
    return frozenset(values)


def fp_set(S, x: Sequence[int], frm: int = 1, to: Optional[int] = None):
    return _as_set(S, fp_values(S, x, frm, to))


def zfp_k(S, family: SequenceFamily, k: int = 1):
    """ZFP_k: zigzag products over index sets H ⊆ [k, L]."""
    if not 1 <= k <= family.L:
        raise BoundsError(f"k={k} outside [1, {family.L}]")
    columns = [sorted({s[i] for s in family}) for i in range(k - 1, family.L)]
    return _as_set(S, zfp_values(S, columns))


def eval_x(S, w: JWitness, f: Sequence[int]) -> int:
    """(a(1) f(t(1)) ... a(m) f(t(m))) a(m+1), multiplied left to right."""
    if w.t[-1] > len(f):
        raise BoundsError(f"index {w.t[-1]} beyond sequence length {len(f)}")
    acc = w.a[0]
    mul = S.mul
    for j in range(w.m):
        acc = mul(acc, f[w.t[j] - 1])
        acc = mul(acc, w.a[j + 1])
    return acc


def _lex_first_a(S, m, cols, accept):
    """Lexicographically least a ∈ S^{m+1} with accept(final states).

    ``cols[j]`` holds f(t(j+1)) for each family member.  Dead partial states
    are memoised; the memo never changes which witness is found first.
    """
    elements = S.elements
    table = S.table
    width = len(cols[0]) if cols else 0
    dead = set()
    a = []

    def go(j, state):
        if j == m:
            for c in elements:
                final = tuple(table[s][c] for s in state)
                if accept(final):
                    a.append(c)
                    return True
            return False
        key = (j, state)
        if key in dead:
            return False
        col = cols[j]
        for c in elements:
            if state is None:
                nxt = tuple(table[c][col[i]] for i in range(width))
            else:
                nxt = tuple(table[table[state[i]][c]][col[i]] for i in range(width))
            a.append(c)
            if go(j + 1, nxt):
                return True
            a.pop()
        dead.add(key)
        return False

    return tuple(a) if go(0, None) else None


def _lex_first_a_commutative(S, m, vf, target):
    """Commutative shortcut: x(m,a,t,f) = (a(1)+...+a(m+1)) + Σ f(t(j)).

    Finds which totals work first, then the lexicographically least a with
    such a total; the result coincides with the general search.
    """
    table = S.table
    sums = set(S.elements)
    for _ in range(m):
        sums = {table[p][c] for p in sums for c in S.elements}
    good = {c for c in sums if all(table[c][v] in target for v in vf)}
    if not good:
        return None
    # reach[j]: totals reachable by a(j+1..m+1) (m+1-j terms)
    reach = [None] * (m + 2)
    reach[m + 1] = {None}
    level = set(S.elements)
    reach[m] = level
    for j in range(m - 1, -1, -1):
        level = {table[c][p] for c in S.elements for p in level}
        reach[j] = level
    a = []
    prefix = None
    for j in range(m + 1):
        rest = reach[j + 1]
        for c in S.elements:
            p = c if prefix is None else table[prefix][c]
            if j == m:
                ok = p in good
            else:
                ok = any(table[p][r] in good for r in rest)
            if ok:
                a.append(c)
                prefix = p
                break
        else:
            raise AssertionError("commutative lift lost a reachable total")
    return tuple(a)


def find_j_witness(
    S: FiniteSemigroup,
    target: ElementSet,
    family: SequenceFamily,
    max_m: int,
    min_t: int = 1,
    path: str = "auto",
    cancel: Optional[CancelToken] = None,
) -> Optional[JWitness]:
    """First (m, t, a) in the order: m ascending, t lexicographic, a lexicographic,
    with x(m,a,t,f) ∈ target for every f in family and t(1) >= min_t."""
    if max_m > family.L:
        raise BoundsError(f"max_m={max_m} exceeds sequence length {family.L}")
    family.check_in(S)
    if path == "auto":
        path = "commutative" if S.commutative else "general"
    if path == "commutative" and not S.commutative:
        raise PreconditionError("commutative search path needs a commutative semigroup")
    if not target:
        return None
    tmask = target.mask
    seqs = family.sequences
    for m in range(1, max_m + 1):
        for t in itertools.combinations(range(min_t, family.L + 1), m):
            if cancel is not None:
                cancel.check({"m": m, "t": t})
            if path == "commutative":
                vf = [S.product(f[i - 1] for i in t) for f in seqs]
                a = _lex_first_a_commutative(S, m, vf, target)
            else:
                cols = [tuple(f[i - 1] for f in seqs) for i in t]
                a = _lex_first_a(S, m, cols, lambda fin: all(tmask >> v & 1 for v in fin))
            if a is not None:
                return JWitness(m, a, t)
    return None


def is_j_set_bounded(
    S: FiniteSemigroup,
    A: ElementSet,
    family: SequenceFamily,
    max_m: int,
    path: str = "auto",
    cancel: Optional[CancelToken] = None,
) -> Verdict:
    """Bounded J-set test against one family.

    A bounded failure is never a disproof: the definition ranges over every
    finite family of infinite sequences.
    """
    w = find_j_witness(S, A, family, max_m, path=path, cancel=cancel)
    bounds = {"max_m": max_m, "L": family.L, "family_size": len(family)}
    if w is None:
        return Verdict(Status.REFUTED_WITHIN_BOUNDS, None, bounds)
    for f in family:
        if eval_x(S, w, f) not in A:
            raise AssertionError(f"J witness {w} fails re-evaluation")
    return Verdict(Status.ESTABLISHED, w, bounds)


def is_ip_r_star_bounded(
    S: FiniteSemigroup, A: ElementSet, r: int, pool: Optional[ElementSet] = None
) -> Verdict:
    """Does A meet FP(x_1..x_r) for every injective x drawn from pool?"""
    if r < 1:
        raise ValueError("r must be positive")
    pool = S.full() if pool is None else pool
    if r > len(pool):
        raise PreconditionError(f"no injective sequence of length {r} in a pool of {len(pool)}")
    exact = pool == S.full()
    bounds = {"r": r, "pool": pool.members, "exact": exact}
    checked = 0
    for xs in itertools.permutations(pool.members, r):
        checked += 1
        if not fp_values(S, xs) & set(A):
            return Verdict(Status.REFUTED_EXACTLY, xs, bounds)
    bounds["sequences_checked"] = checked
    return Verdict(Status.ESTABLISHED, {"sequences_checked": checked, "exact": exact}, bounds)
