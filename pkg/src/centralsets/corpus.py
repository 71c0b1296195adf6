"""Named semigroup families used as a test corpus beyond order 3."""

from __future__ import annotations

import itertools

from .semigroup import FiniteSemigroup

__all__ = [
    "right_zero",
    "left_zero",
    "rectangular_band",
    "cyclic_monoid",
    "cyclic_group",
    "zmod_mult",
    "full_transformation_monoid",
    "symmetric_group",
    "direct_product",
    "right_group",
    "bundled_corpus",
    "named",
]


def right_zero(n: int) -> FiniteSemigroup:
    """x*y = y"""
    return FiniteSemigroup([[y for y in range(n)] for _ in range(n)])


def left_zero(n: int) -> FiniteSemigroup:
    """x*y = x"""
    return FiniteSemigroup([[x] * n for x in range(n)])


def rectangular_band(a: int, b: int) -> FiniteSemigroup:
    # (i,j)*(k,l) = (i,l); element (i,j) has index i*b + j
    pairs = [(i, j) for i in range(a) for j in range(b)]
    table = [[i * b + l for (_, l) in pairs] for (i, _) in pairs]
    names = [f"r{i}c{j}" for i, j in pairs]
    return FiniteSemigroup(table, names=names)


def cyclic_monoid(index: int, period: int) -> FiniteSemigroup:
    """<a | a^(index+period) = a^index>; element e is a^e, element 0 the identity."""
    if period < 1 or index < 0:
        raise ValueError("need period >= 1 and index >= 0")
    n = index + period

    def reduce(e):
        return e if e < n else index + (e - index) % period

    table = [[reduce(x + y) for y in range(n)] for x in range(n)]
    names = ["1"] + [f"a{e}" for e in range(1, n)]
    return FiniteSemigroup(table, names=names)


def cyclic_group(n: int) -> FiniteSemigroup:
    return FiniteSemigroup([[(x + y) % n for y in range(n)] for x in range(n)])


def zmod_mult(n: int) -> FiniteSemigroup:
    return FiniteSemigroup([[(x * y) % n for y in range(n)] for x in range(n)])


def full_transformation_monoid(points: int = 2) -> FiniteSemigroup:
    # maps act on the right: (f*g)(p) = g(f(p))
    maps = list(itertools.product(range(points), repeat=points))
    index = {m: i for i, m in enumerate(maps)}
    table = [[index[tuple(g[f[p]] for p in range(points))] for g in maps] for f in maps]
    names = ["".join(map(str, m)) for m in maps]
    return FiniteSemigroup(table, names=names)


def symmetric_group(points: int = 3) -> FiniteSemigroup:
    perms = list(itertools.permutations(range(points)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(g[f[p]] for p in range(points))] for g in perms] for f in perms]
    names = ["".join(map(str, p)) for p in perms]
    return FiniteSemigroup(table, names=names)


def direct_product(S: FiniteSemigroup, T: FiniteSemigroup) -> FiniteSemigroup:
    """Componentwise product; (s,t) has index s*|T| + t."""
    m = T.order
    pairs = [(s, t) for s in S.elements for t in T.elements]
    table = [[S.mul(s, u) * m + T.mul(t, v) for (u, v) in pairs] for (s, t) in pairs]
    names = [f"{S.label(s)}.{T.label(t)}" for s, t in pairs]
    return FiniteSemigroup(table, names=names)


def right_group(g: int, n: int) -> FiniteSemigroup:
    """Z_g x right-zero(n): (a,i)(b,j) = (a+b, j).  Completely simple, no identity for n > 1."""
    return direct_product(cyclic_group(g), right_zero(n))


def bundled_corpus() -> list[tuple[str, FiniteSemigroup]]:
    """Named semigroups of order 4..6 covering bands, monoids and groups."""
    out = []
    for n in (4, 5, 6):
        out.append((f"right-zero-{n}", right_zero(n)))
        out.append((f"left-zero-{n}", left_zero(n)))
    for a, b in ((2, 2), (2, 3), (3, 2)):
        out.append((f"rect-band-{a}x{b}", rectangular_band(a, b)))
    for index in range(0, 6):
        for period in range(1, 7 - index):
            if 4 <= index + period <= 6:
                out.append((f"cyclic-monoid-{index}-{period}", cyclic_monoid(index, period)))
    out.append(("T2", full_transformation_monoid(2)))
    for n in (4, 5, 6):
        out.append((f"zmod-mult-{n}", zmod_mult(n)))
    out.append(("S3", symmetric_group(3)))
    return out


def named(name: str) -> FiniteSemigroup:
    """Build a corpus member by name, e.g. ``right-zero-3`` or ``Z4``."""
    simple = {
        "T2": lambda: full_transformation_monoid(2),
        "S3": lambda: symmetric_group(3),
    }
    if name in simple:
        return simple[name]()
    if name.startswith("Z") and name[1:].isdigit():
        return cyclic_group(int(name[1:]))
    head, _, tail = name.rpartition("-")
    if head == "right-zero":
        return right_zero(int(tail))
    if head == "left-zero":
        return left_zero(int(tail))
    if head == "zmod-mult":
        return zmod_mult(int(tail))
    if head == "rect-band":
        a, b = tail.split("x")
        return rectangular_band(int(a), int(b))
    if head == "right-group":
        g, n = tail.split("x")
        return right_group(int(g), int(n))
    if name.startswith("cyclic-monoid-"):
        index, period = name[len("cyclic-monoid-"):].split("-")
        return cyclic_monoid(int(index), int(period))
    raise KeyError(name)
