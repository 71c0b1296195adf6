"""Idempotents, minimal one-sided ideals, the kernel K(S) and the groups R∩L.

For finite S every ultrafilter is principal, so these are exactly the
objects the Stone-Čech structure theory talks about.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InvariantViolation, PreconditionError
from .semigroup import ElementSet, FiniteSemigroup

__all__ = [
    "IdealDecomposition",
    "idempotents",
    "principal_ideal",
    "minimal_ideals",
    "kernel",
    "group_component",
    "decompose",
    "is_two_sided_ideal",
    "restrict",
    "lift",
    "sub_kernel",
]


@dataclass(frozen=True)
class IdealDecomposition:
    minimal_left: tuple[ElementSet, ...]
    minimal_right: tuple[ElementSet, ...]
    kernel: ElementSet
    idempotents: ElementSet
    minimal_idempotents: ElementSet


def idempotents(S: FiniteSemigroup) -> ElementSet:
    return S.subset(x for x in S.elements if S.mul(x, x) == x)


def principal_ideal(S: FiniteSemigroup, x: int, side: str) -> ElementSet:
    """{x} ∪ Sx (side="left") or {x} ∪ xS (side="right")."""
    if side == "left":
        mask = 1 << x
        for s in S.elements:
            mask |= 1 << S.table[s][x]
    elif side == "right":
        mask = 1 << x
        for s in S.table[x]:
            mask |= 1 << s
    else:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    return ElementSet(S.order, mask)


def minimal_ideals(S: FiniteSemigroup, side: str) -> list[ElementSet]:
    """Inclusion-minimal principal one-sided ideals, ordered by least member.

    Every minimal one-sided ideal of a finite semigroup is principal, so this
    list is complete.
    """
    return list(_minimal_ideals(S, side))


@lru_cache(maxsize=4096)
def _minimal_ideals(S, side):
    principals = {principal_ideal(S, x, side) for x in S.elements}
    minimal = [I for I in principals if not any(J < I for J in principals)]
    minimal.sort(key=lambda I: I.members)
    return tuple(minimal)


def _union(sets, n):
    mask = 0
    for s in sets:
        mask |= s.mask
    return ElementSet(n, mask)


def is_two_sided_ideal(S: FiniteSemigroup, I: ElementSet) -> bool:
    full = S.full()
    return S.set_product(full, I) <= I and S.set_product(I, full) <= I


def kernel(S: FiniteSemigroup) -> ElementSet:
    return _kernel(S)


@lru_cache(maxsize=4096)
def _kernel(S):
    K_left = _union(_minimal_ideals(S, "left"), S.order)
    K_right = _union(_minimal_ideals(S, "right"), S.order)
    if K_left != K_right:
        raise InvariantViolation(
            f"union of minimal left ideals {K_left} != union of minimal right ideals {K_right}"
        )
    return K_left


def group_component(S: FiniteSemigroup, R: ElementSet, L: ElementSet) -> tuple[ElementSet, int]:
    """R∩L for a minimal right ideal R and minimal left ideal L, with its identity."""
    if R not in _minimal_ideals(S, "right"):
        raise PreconditionError(f"{R} is not a minimal right ideal")
    if L not in _minimal_ideals(S, "left"):
        raise PreconditionError(f"{L} is not a minimal left ideal")
    G = R & L
    e = next((x for x in G if all(S.mul(x, g) == g and S.mul(g, x) == g for g in G)), None)
    if e is None:
        raise InvariantViolation(f"R∩L = {G} has no identity")
    for g in G:
        for h in G:
            if S.mul(g, h) not in G:
                raise InvariantViolation(f"R∩L not closed at {g}*{h}")
        if not any(S.mul(g, h) == e and S.mul(h, g) == e for h in G):
            raise InvariantViolation(f"{g} has no inverse in R∩L")
    return G, e


def decompose(S: FiniteSemigroup) -> IdealDecomposition:
    E = idempotents(S)
    K = kernel(S)
    return IdealDecomposition(
        minimal_left=_minimal_ideals(S, "left"),
        minimal_right=_minimal_ideals(S, "right"),
        kernel=K,
        idempotents=E,
        minimal_idempotents=E & K,
    )


def restrict(S: FiniteSemigroup, B: ElementSet):
    """The subsemigroup B as a semigroup of its own.

    Returns ``(T, embed)`` where ``embed[i]`` is the element of S that the
    i-th element of T stands for.
    """
    members = B.members
    if not members:
        raise PreconditionError("empty subset is not a subsemigroup")
    pos = {x: i for i, x in enumerate(members)}
    table = []
    for x in members:
        row = []
        for y in members:
            xy = S.mul(x, y)
            if xy not in pos:
                raise PreconditionError(f"{B} is not closed: {x}*{y}={xy}")
            row.append(pos[xy])
        table.append(row)
    names = [S.label(x) for x in members] if S.names else None
    return FiniteSemigroup(table, names=names), members


def lift(S: FiniteSemigroup, embed, T_set: ElementSet) -> ElementSet:
    return S.subset(embed[i] for i in T_set)


def sub_kernel(S: FiniteSemigroup, B: ElementSet) -> ElementSet:
    """K(B) as a subset of S, for a subsemigroup B."""
    T, embed = restrict(S, B)
    return lift(S, embed, kernel(T))
