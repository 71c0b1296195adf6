"""Windowed versions of the statements about (N,+).

Everything here is decided inside [1, W].  A window can neither prove nor
refute a statement about all of N, so verdicts are "within bounds" only.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import BoundsError, ParseError
from .largeness import Status, Verdict

__all__ = [
    "WindowSet",
    "parse_window_set",
    "classify_window",
    "fs_window",
    "CstWitnessChain",
    "CstBounds",
    "cst_witness_commutative",
    "verify_cst_chain",
]


@dataclass(frozen=True)
class WindowSet:
    W: int
    members: frozenset
    generator: Optional[str] = None

    def __post_init__(self):
        if self.W < 1:
            raise ValueError("window bound must be positive")
        if any(not 1 <= x <= self.W for x in self.members):
            raise ValueError(f"members must lie in [1,{self.W}]")

    def __contains__(self, x):
        return x in self.members

    def __len__(self):
        return len(self.members)

    def sorted(self) -> list[int]:
        return sorted(self.members)


def _term(term: str, W: int) -> set:
    term = term.strip()
    m = re.fullmatch(r"mod\s+(\d+)\s*,\s*(\d+)", term)
    if m:
        k, r = int(m.group(1)), int(m.group(2))
        if k < 1:
            raise ParseError("modulus must be positive")
        return {x for x in range(1, W + 1) if x % k == r % k}
    if term == "all":
        return set(range(1, W + 1))
    if term == "pow2blocks":
        out = set()
        n = 1
        while 2**n <= W:
            out.update(range(2**n, min(2**n + n, W) + 1))
            n += 1
        return out
    m = re.fullmatch(r"(?:range|intervals)\s+(.+)", term)
    if m:
        out = set()
        for piece in m.group(1).split(","):
            lo, _, hi = piece.strip().partition("-")
            if not (lo.isdigit() and hi.isdigit()):
                raise ParseError(f"bad interval {piece!r}")
            out.update(range(max(1, int(lo)), min(W, int(hi)) + 1))
        return out
    if re.fullmatch(r"\d+(\s*,\s*\d+)*", term):
        return {int(v) for v in term.split(",") if 1 <= int(v) <= W}
    raise ParseError(f"unrecognised set term {term!r}")


def parse_window_set(spec: str, W: int) -> WindowSet:
    """Materialise a symbolic set inside [1, W].

    Terms: ``mod k,r`` (residue class), ``range a-b,c-d`` (interval union),
    ``pow2blocks`` (the union of [2^n, 2^n+n]), ``all``, or an explicit list
    ``1,4,9``.  Terms joined by ``&`` are intersected.
    """
    members = None
    for term in spec.split("&"):
        part = _term(term, W)
        members = part if members is None else members & part
    return WindowSet(W, frozenset(members), generator=spec)


def classify_window(A: WindowSet, gap: int, block: int) -> dict:
    """Syndetic / thick / piecewise syndetic verdicts inside the window.

    syndetic: every n in [1, W-gap] has A ∩ [n+1, n+gap] nonempty.
    thick: A contains `block` consecutive integers.
    pws: for some g <= gap, the fattening A ∪ (A-1) ∪ ... ∪ (A-g)
         contains `block` consecutive integers.
    """
    W = A.W
    if not (1 <= gap <= W and 1 <= block <= W):
        raise BoundsError("gap and block must lie in [1, W]")
    bounds = {"W": W, "gap": gap, "block": block}

    syndetic_fail = next(
        (n for n in range(1, W - gap + 1) if not any(n + t in A for t in range(1, gap + 1))),
        None,
    )
    if syndetic_fail is None and W > gap:
        syndetic = Verdict(Status.ESTABLISHED, {"G": list(range(1, gap + 1))}, bounds)
    else:
        syndetic = Verdict(Status.REFUTED_WITHIN_BOUNDS, {"uncovered": syndetic_fail}, bounds)

    run = _first_run(A.members, W, block)
    if run is not None:
        thick = Verdict(Status.ESTABLISHED, {"interval": run}, bounds)
    else:
        thick = Verdict(Status.REFUTED_WITHIN_BOUNDS, None, bounds)

    pws = Verdict(Status.REFUTED_WITHIN_BOUNDS, None, bounds)
    for g in range(0, gap + 1):
        fat = {x - t for x in A.members for t in range(g + 1) if x - t >= 1}
        run = _first_run(fat, W, block)
        if run is not None:
            pws = Verdict(Status.ESTABLISHED, {"g": g, "interval": run}, bounds)
            break
    return {"syndetic": syndetic, "thick": thick, "pws": pws}


def _first_run(members, W, block):
    count = 0
    for x in range(1, W + 1):
        count = count + 1 if x in members else 0
        if count >= block:
            return (x - block + 1, x)
    return None


def fs_window(x: Sequence[int], frm: int = 1, to: Optional[int] = None) -> set:
    """Finite sums over nonempty index sets within [frm, to] (1-based)."""
    to = len(x) if to is None else to
    if not 1 <= frm <= to <= len(x):
        raise BoundsError(f"need 1 <= from <= to <= {len(x)}")
    sums: set = set()
    for v in x[frm - 1:to]:
        sums |= {s + v for s in sums} | {v}
    return sums


@dataclass(frozen=True)
class CstWitnessChain:
    depth: int
    a: tuple[int, ...]
    H: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.a) != self.depth or len(self.H) != self.depth:
            raise ValueError("chain lengths disagree with depth")
        for h in self.H:
            if not h or list(h) != sorted(set(h)):
                raise ValueError(f"index set {h} must be nonempty and sorted")
        for h1, h2 in zip(self.H, self.H[1:]):
            if max(h1) >= min(h2):
                raise ValueError("need max H_i < min H_{i+1}")


@dataclass(frozen=True)
class CstBounds:
    a_max: int = 20
    h_size: int = 2
    t_max: Optional[int] = None


def cst_witness_commutative(
    A: WindowSet, ys: Sequence[Sequence[int]], depth: int, bounds: CstBounds = CstBounds()
) -> Verdict:
    """Depth-first search for (a_n, H_n), n=1..depth, with every
    Σ_{n∈F}(a_n + Σ_{t∈H_n} y_{i,t}) in A for nonempty F and every i.

    Candidates at each level: H by size then lexicographic, then a ascending.
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    t_max = bounds.t_max or min(len(y) for y in ys)
    if any(len(y) < t_max for y in ys):
        raise BoundsError(f"every sequence needs length >= {t_max}")
    k = len(ys)
    W = A.W
    record = {"a_max": bounds.a_max, "h_size": bounds.h_size, "t_max": t_max, "W": W}

    def candidates(lo):
        pool = range(lo, t_max + 1)
        for size in range(1, bounds.h_size + 1):
            for H in itertools.combinations(pool, size):
                yield H

    chain_a: list[int] = []
    chain_H: list[tuple[int, ...]] = []
    dead = set()

    def go(level, partial, lo):
        # partial[i]: sums over nonempty F ⊆ [1, level-1] for sequence i
        if level > depth:
            return True
        key = (level, lo, tuple(frozenset(p) for p in partial))
        if key in dead:
            return False
        for H in candidates(lo):
            ysum = [sum(y[t - 1] for t in H) for y in ys]
            for a in range(1, bounds.a_max + 1):
                vals = [a + s for s in ysum]
                ok = True
                nxt = []
                for i in range(k):
                    new = {vals[i]} | {p + vals[i] for p in partial[i]}
                    if any(not (1 <= v <= W) or v not in A for v in new):
                        ok = False
                        break
                    nxt.append(partial[i] | new)
                if not ok:
                    continue
                chain_a.append(a)
                chain_H.append(H)
                if go(level + 1, nxt, max(H) + 1):
                    return True
                chain_a.pop()
                chain_H.pop()
        dead.add(key)
        return False

    if not go(1, [set() for _ in range(k)], 1):
        return Verdict(Status.REFUTED_WITHIN_BOUNDS, None, record)
    chain = CstWitnessChain(depth, tuple(chain_a), tuple(chain_H))
    failures = verify_cst_chain(A, ys, chain)
    if failures:
        raise AssertionError(f"search produced a chain that fails re-verification: {failures[0]}")
    return Verdict(Status.ESTABLISHED, chain, record)


def verify_cst_chain(A: WindowSet, ys: Sequence[Sequence[int]], chain: CstWitnessChain) -> list:
    """Brute-force recheck over every nonempty F and every sequence."""
    failures = []
    for h1, h2 in zip(chain.H, chain.H[1:]):
        if max(h1) >= min(h2):
            failures.append(("order", h1, h2))
    for r in range(1, chain.depth + 1):
        for F in itertools.combinations(range(chain.depth), r):
            for i, y in enumerate(ys):
                total = 0
                for n in F:
                    total += chain.a[n] + sum(y[t - 1] for t in chain.H[n])
                if total not in A.members:
                    failures.append((tuple(n + 1 for n in F), i, total))
    return failures
