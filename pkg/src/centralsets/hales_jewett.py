"""Words, combinatorial lines, and exhaustive Hales–Jewett numbers at toy sizes.

Words are tuples over {1..t}; variable words use 0 for the variable ``*``.
Templates are ordered lexicographically with ``*`` before every letter.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .errors import PreconditionError
from .largeness import CancelToken

__all__ = [
    "STAR",
    "word_str",
    "parse_word",
    "line_points",
    "iter_lines",
    "count_lines",
    "Line",
    "find_mono_line",
    "mono_lines",
    "line_free_coloring",
    "verify_line_free",
    "HJResult",
    "hj_number",
    "format_certificate",
    "parse_certificate",
]

STAR = 0


def word_str(w: Sequence[int]) -> str:
    return "".join("*" if c == STAR else str(c) for c in w)


def parse_word(s: str) -> tuple[int, ...]:
    return tuple(STAR if c == "*" else int(c) for c in s)


def line_points(vw: Sequence[int], t: int) -> list[tuple[int, ...]]:
    """Substitute 1..t for every ``*`` at once."""
    if STAR not in vw:
        raise ValueError("a variable word needs at least one *")
    if any(not 0 <= c <= t for c in vw):
        raise ValueError(f"letters must lie in [1,{t}]")
    return [tuple(i if c == STAR else c for c in vw) for i in range(1, t + 1)]


def iter_lines(N: int, t: int):
    """Every variable word of length N, in template order."""
    for vw in itertools.product(range(0, t + 1), repeat=N):
        if STAR in vw:
            yield vw


def count_lines(N: int, t: int) -> int:
    return (t + 1) ** N - t**N


@dataclass(frozen=True)
class Line:
    template: tuple[int, ...]
    points: tuple[tuple[int, ...], ...]

    def __str__(self):
        return word_str(self.template)


def _check_total(coloring, N, t):
    for w in itertools.product(range(1, t + 1), repeat=N):
        if w not in coloring:
            raise PreconditionError(f"coloring is partial: {word_str(w)} has no color")


def mono_lines(coloring: Mapping, N: int, t: int):
    """All monochromatic lines, in template order."""
    _check_total(coloring, N, t)
    for vw in iter_lines(N, t):
        pts = line_points(vw, t)
        c = coloring[pts[0]]
        if all(coloring[p] == c for p in pts[1:]):
            yield Line(vw, tuple(pts))


def find_mono_line(coloring: Mapping, N: int, t: int) -> Optional[Line]:
    return next(mono_lines(coloring, N, t), None)


def verify_line_free(coloring: Mapping, N: int, t: int) -> bool:
    return find_mono_line(coloring, N, t) is None


def line_free_coloring(r: int, t: int, N: int, cancel: Optional[CancelToken] = None) -> Optional[dict]:
    """Backtracking search for an r-coloring of [t]^N with no monochromatic line.

    Colors are introduced in order (symmetry breaking).  Whenever a line has
    t-1 points of one color and one uncolored point, that color is removed
    from the free point's domain; singleton domains are assigned at once.
    """
    if t == 1 or r == 1:
        return None
    points = list(itertools.product(range(1, t + 1), repeat=N))
    index = {p: i for i, p in enumerate(points)}
    lines = [[index[p] for p in line_points(vw, t)] for vw in iter_lines(N, t)]
    on = [[] for _ in points]
    for li, ln in enumerate(lines):
        for p in ln:
            on[p].append(li)
    n = len(points)
    full = (1 << r) - 1
    domain = [full] * n
    color = [-1] * n
    trail: list = []

    def assign(p, c, queue):
        color[p] = c
        trail.append(("c", p))
        for li in on[p]:
            ln = lines[li]
            free = [q for q in ln if color[q] < 0]
            cols = {color[q] for q in ln if color[q] >= 0}
            if len(cols) != 1:
                continue
            (only,) = cols
            if not free:
                return False
            if len(free) == 1:
                q = free[0]
                if domain[q] >> only & 1:
                    trail.append(("d", q, domain[q]))
                    domain[q] &= ~(1 << only)
                    if domain[q] == 0:
                        return False
                    if domain[q] & (domain[q] - 1) == 0:
                        queue.append(q)
        return True

    def propagate(p, c):
        queue = []
        if not assign(p, c, queue):
            return False
        while queue:
            q = queue.pop()
            if color[q] >= 0:
                continue
            d = domain[q]
            c2 = d.bit_length() - 1
            if not assign(q, c2, queue):
                return False
        return True

    def undo(mark):
        while len(trail) > mark:
            entry = trail.pop()
            if entry[0] == "c":
                color[entry[1]] = -1
            else:
                domain[entry[1]] = entry[2]

    def go(max_used):
        if cancel is not None:
            cancel.check()
        best = None
        for p in range(n):
            if color[p] < 0:
                size = bin(domain[p]).count("1")
                if best is None or size < best[0]:
                    best = (size, p)
                    if size == 1:
                        break
        if best is None:
            return True
        p = best[1]
        for c in range(r):
            if not domain[p] >> c & 1 or c > max_used + 1:
                continue
            mark = len(trail)
            if propagate(p, c) and go(max(max_used, max(color))):
                return True
            undo(mark)
        return False

    if not go(-1):
        return None
    coloring = {points[i]: color[i] for i in range(n)}
    if not verify_line_free(coloring, N, t):
        raise AssertionError("search returned a coloring with a monochromatic line")
    return coloring


@dataclass(frozen=True)
class HJResult:
    r: int
    t: int
    value: Optional[int]
    max_n: int
    certificate: Optional[dict]
    certificate_n: Optional[int]

    def __str__(self):
        if self.value is not None:
            return f"HJ({self.r},{self.t}) = {self.value}"
        return f"HJ({self.r},{self.t}) > {self.max_n}"


def hj_number(r: int, t: int, max_n: int, cancel: Optional[CancelToken] = None) -> HJResult:
    """Least N <= max_n such that every r-coloring of [t]^N has a monochromatic line.

    The certificate is a line-free coloring at value-1 (or at max_n when the
    value exceeds the cap).
    """
    if r < 1 or t < 1 or max_n < 1:
        raise ValueError("r, t, max_n must be positive")
    previous = None
    for N in range(1, max_n + 1):
        col = line_free_coloring(r, t, N, cancel)
        if col is None:
            return HJResult(r, t, N, max_n, previous, N - 1 if previous is not None else None)
        previous = col
    return HJResult(r, t, None, max_n, previous, max_n)


def format_certificate(coloring: Mapping) -> str:
    return "".join(f"{word_str(w)} {c}\n" for w, c in sorted(coloring.items()))


def parse_certificate(text: str) -> dict:
    out = {}
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            w, c = line.split()
            out[parse_word(w)] = int(c)
    return out
