"""Filters given by finite bases, and the filter-relative largeness notions.

Every filter on a finite S is principal: it is the family of supersets of
B = ∩base, and its closure in βS is the set of principal ultrafilters at
points of B.  The literal quantifier checks below iterate over all
supersets of B anyway, so that the collapsed shortcuts are kept honest.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .errors import (
    BoundsError,
    EmptyClosureError,
    InjectivityError,
    InvariantViolation,
    PreconditionError,
)
from .ideals import idempotents, sub_kernel
from .largeness import (
    SequenceFamily,
    Status,
    Verdict,
    find_j_witness,
    fp_values,
    zfp_k,
    zfp_values,
)
from .semigroup import INTEGERS, ElementSet, FiniteSemigroup, translate_preimage

__all__ = [
    "FilterBase",
    "TruncatedFilter",
    "closure_set",
    "IdempotencyReport",
    "is_idempotent_filter",
    "PwsFSyndetic",
    "pws_F_certificate",
    "is_pws_F_syndetic",
    "is_F_central",
    "is_F_IP",
    "GoodCertificate",
    "is_F_good_bounded",
    "is_F_J_bounded",
    "TruncatedIdempotency",
    "filter_from_ip_sequence",
    "good_family_from_residues",
    "f_sub_ip_check",
]

LITERAL_SUPERSET_LIMIT = 12  # at most 2**12 supersets in literal checks


@dataclass(frozen=True)
class FilterBase:
    base: tuple[ElementSet, ...]

    def __init__(self, base):
        base = tuple(base)
        if not base:
            raise ValueError("a filter base needs at least one set")
        n = base[0].universe
        for V in base:
            if V.universe != n:
                raise ValueError("base sets live in different universes")
            if not V:
                raise ValueError("base sets must be nonempty")
        object.__setattr__(self, "base", base)

    @classmethod
    def trivial(cls, S: FiniteSemigroup) -> "FilterBase":
        """The filter {S}, whose closure is all of βS."""
        return cls([S.full()])

    @property
    def universe(self) -> int:
        return self.base[0].universe

    @property
    def closure_hint(self) -> ElementSet:
        mask = self.base[0].mask
        for V in self.base[1:]:
            mask &= V.mask
        return ElementSet(self.universe, mask)

    def contains(self, X: ElementSet) -> bool:
        """Membership in the generated filter."""
        return self.closure_hint <= X

    def sets(self):
        return self.base


def closure_set(S: FiniteSemigroup, F: FilterBase) -> ElementSet:
    if F.universe != S.order:
        raise PreconditionError("filter base does not live in this semigroup")
    B = F.closure_hint
    if not B:
        raise EmptyClosureError("base sets have empty intersection: the closure is empty")
    return B


def _is_subsemigroup(S, B):
    return S.set_product(B, B) <= B


def _require_subsemigroup(S, F):
    B = closure_set(S, F)
    if not _is_subsemigroup(S, B):
        raise PreconditionError(f"closure {S.format_set(B)} is not a subsemigroup")
    return B


def _literal_supersets(B):
    if B.universe - len(B) > LITERAL_SUPERSET_LIMIT:
        return [B]
    return list(B.supersets())


@dataclass(frozen=True)
class IdempotencyReport:
    literal: Optional[bool]
    subsemigroup: bool
    supersets_checked: int
    failing_set: Optional[ElementSet] = None

    @property
    def idempotent(self) -> bool:
        return self.subsemigroup


def is_idempotent_filter(S: FiniteSemigroup, F: FilterBase) -> IdempotencyReport:
    """F ⊆ F·F, checked literally over every V ⊇ B and via B·B ⊆ B.

    {y : y^{-1}V ∈ F} = {y : y·B ⊆ V}, which must contain B.
    """
    B = closure_set(S, F)
    shortcut = _is_subsemigroup(S, B)
    if B.universe - len(B) > LITERAL_SUPERSET_LIMIT:
        return IdempotencyReport(None, shortcut, 0)
    checked = 0
    failing = None
    for V in B.supersets():
        checked += 1
        good_y = S.subset(y for y in S.elements if S.left_translate(y, B) <= V)
        if not B <= good_y:
            failing = V
            break
    literal = failing is None
    if literal != shortcut:
        raise InvariantViolation("literal idempotency check disagrees with B·B ⊆ B")
    return IdempotencyReport(literal, shortcut, checked, failing)


@dataclass(frozen=True)
class PwsFSyndetic:
    combinatorial: bool
    witnesses: dict
    algebraic: bool
    supersets_checked: int
    failing_V: Optional[ElementSet] = None

    @property
    def agree(self) -> bool:
        return self.combinatorial == self.algebraic


def pws_F_certificate(S: FiniteSemigroup, F: FilterBase, A: ElementSet, V: ElementSet, literal_W=True):
    """Find (F_V, W_V, y): F_V ⊆ V finite, W_V ⊇ B, y ∈ V with W_V·y ⊆ F_V^{-1}A.

    Only H = W_V is tested for the inner "every finite H ⊆ W_V": the same y
    serves every subset.  Enumeration: F_V by size then lexicographic, W_V
    over supersets of B (B first), y by index.
    """
    B = closure_set(S, F)
    if not B <= V:
        raise PreconditionError("V must contain the closure of the filter")
    pre = [translate_preimage(S, S.subset([t]), A).mask for t in S.elements]
    Ws = _literal_supersets(B) if literal_W else [B]
    orbit = {}
    for FV in V.subsets(nonempty=True):
        cover = 0
        for t in FV:
            cover |= pre[t]
        for W in Ws:
            for y in V:
                key = (W.mask, y)
                if key not in orbit:
                    orbit[key] = S.right_translate(W, y).mask
                if orbit[key] & ~cover == 0:
                    return FV, W, y
    return None


def is_pws_F_syndetic(S: FiniteSemigroup, F: FilterBase, A: ElementSet, literal: bool = True) -> PwsFSyndetic:
    B = _require_subsemigroup(S, F)
    algebraic = bool(A & sub_kernel(S, B))
    Vs = _literal_supersets(B) if literal else [B]
    witnesses = {}
    failing = None
    for V in Vs:
        cert = pws_F_certificate(S, F, A, V, literal_W=literal)
        if cert is None:
            failing = V
            break
        witnesses[V] = cert
    return PwsFSyndetic(failing is None, witnesses, algebraic, len(witnesses), failing)


def is_F_central(S: FiniteSemigroup, F: FilterBase, A: ElementSet):
    """Returns ``(True, e)`` for the least idempotent e of K(B) lying in A."""
    B = _require_subsemigroup(S, F)
    hits = A & idempotents(S) & sub_kernel(S, B)
    if hits:
        return True, hits.members[0]
    return False, None


def is_F_IP(S: FiniteSemigroup, F: FilterBase, A: ElementSet, star: bool = False):
    """F-IP: A holds an idempotent of B.  F-IP*: A holds every idempotent of B."""
    B = _require_subsemigroup(S, F)
    E = idempotents(S) & B
    if not E:
        raise InvariantViolation("a finite subsemigroup always has an idempotent")
    if star:
        missing = E - A
        if missing:
            return False, missing.members[0]
        return True, E
    hits = A & E
    if hits:
        return True, hits.members[0]
    return False, None


@dataclass(frozen=True)
class GoodCertificate:
    family: SequenceFamily
    k: int
    closure: ElementSet


def is_F_good_bounded(S: FiniteSemigroup, F: FilterBase, family: SequenceFamily, k_max: int) -> Verdict:
    """Least k <= k_max with ZFP_k(family) ⊆ B.

    Checking V = B suffices: every member of the filter contains B.
    """
    if k_max > family.L:
        raise BoundsError(f"k_max={k_max} exceeds sequence length {family.L}")
    family.check_in(S)
    B = closure_set(S, F)
    bounds = {"k_max": k_max, "L": family.L, "checked": "V=B"}
    for k in range(1, k_max + 1):
        if zfp_k(S, family, k) <= B:
            return Verdict(Status.ESTABLISHED, GoodCertificate(family, k, B), bounds)
    return Verdict(Status.REFUTED_WITHIN_BOUNDS, None, bounds)


def _check_good_certificate(S, F, family, certificate):
    if certificate is None or not certificate.established:
        raise PreconditionError("family is not certified F-good")
    cert = certificate.witness
    if not isinstance(cert, GoodCertificate) or cert.family != family:
        raise PreconditionError("goodness certificate belongs to a different family")
    B = closure_set(S, F)
    if cert.closure != B or not zfp_k(S, family, cert.k) <= B:
        raise PreconditionError("goodness certificate does not hold for this filter")
    return cert


def is_F_J_bounded(
    S: FiniteSemigroup,
    F: FilterBase,
    A: ElementSet,
    family: SequenceFamily,
    max_m: int,
    certificate: Verdict,
) -> Verdict:
    """Bounded F-J test; the family must come with its F-good certificate."""
    _check_good_certificate(S, F, family, certificate)
    w = find_j_witness(S, A, family, max_m)
    bounds = {"max_m": max_m, "L": family.L, "family_size": len(family)}
    if w is None:
        return Verdict(Status.REFUTED_WITHIN_BOUNDS, None, bounds)
    return Verdict(Status.ESTABLISHED, w, bounds)


@dataclass(frozen=True)
class TruncatedFilter:
    """Filter generated by the tails FP<x_n>_{n=m}^{L}, m = 1..L."""

    x: tuple
    tails: tuple[frozenset, ...]
    ambient: object = INTEGERS

    @property
    def L(self) -> int:
        return len(self.x)

    def closure(self) -> frozenset:
        """The carrier FP<x_n>_{n=1}^{L}.

        Nested truncated tails intersect down to {x_L}, which is only an
        artifact of cutting the sequence; the carrier is what the filter
        lives on.
        """
        return self.tails[0]

    def sets(self):
        return self.tails


@dataclass(frozen=True)
class TruncatedIdempotency:
    guard: int
    entries: tuple
    failures: tuple

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def vacuous(self) -> bool:
        return not self.entries and not self.failures


def filter_from_ip_sequence(x: Sequence, L: Optional[int] = None, guard: Optional[int] = None, ambient=INTEGERS):
    """Tails of an IP sequence as a filter base, plus a truncated idempotency check.

    For each tail C = FP<x>_{m}^{L} with m <= guard and each y ∈ FP<x>_{m}^{guard},
    look for the least N <= L with y·FP<x>_{N}^{L} ⊆ C.  The guard keeps y
    away from the cut so that such an N can exist at all.
    """
    L = len(x) if L is None else L
    if not 1 <= L <= len(x):
        raise BoundsError(f"L={L} outside [1, {len(x)}]")
    xs = tuple(x[:L])
    if len(set(xs)) != len(xs):
        raise InjectivityError("IP sequences must be injective")
    guard = L - 1 if guard is None else guard
    if not 0 <= guard < L:
        raise BoundsError(f"guard must satisfy 0 <= guard < L={L}")
    tails = tuple(frozenset(fp_values(ambient, xs, m, L)) for m in range(1, L + 1))
    entries = []
    failures = []
    for m in range(1, guard + 1):
        C = tails[m - 1]
        for y in sorted(fp_values(ambient, xs, m, guard)):
            N = next(
                (N for N in range(m + 1, L + 1) if all(ambient.mul(y, z) in C for z in tails[N - 1])),
                None,
            )
            (entries if N is not None else failures).append((m, y, N))
    return TruncatedFilter(xs, tails, ambient), TruncatedIdempotency(guard, tuple(entries), tuple(failures))


def good_family_from_residues(x: Sequence, n: int, ambient=INTEGERS, verify: bool = True) -> SequenceFamily:
    """Split x into residue classes of the 1-based index mod n.

    Class 0 is (x_n, x_2n, ...), class r is (x_r, x_{n+r}, ...); all are cut to
    the shortest class length.  Zigzag products then use strictly increasing
    original indices, so ZFP(family) ⊆ FP(x).
    """
    if n < 2:
        raise BoundsError("need n >= 2")
    if len(x) < n:
        raise BoundsError(f"need at least n={n} terms, got {len(x)}")
    classes = [[x[i - 1] for i in range(1, len(x) + 1) if i % n == r] for r in range(n)]
    length = min(len(c) for c in classes)
    family = SequenceFamily(c[:length] for c in classes)
    if verify:
        zig = zfp_values(ambient, [sorted({s[i] for s in family}, key=repr) for i in range(length)])
        if not zig <= fp_values(ambient, list(x)):
            raise InvariantViolation("residue family has zigzag products outside FP(x)")
    return family


def _base_sets(F):
    if isinstance(F, (FilterBase, TruncatedFilter)):
        return list(F.sets())
    raise TypeError("expected a FilterBase or TruncatedFilter")


def _certify_sequence(S, F, x):
    L = len(x)
    out = {}
    for idx, V in enumerate(_base_sets(F)):
        m = next((m for m in range(1, L + 1) if all(v in V for v in fp_values(S, x, m, L))), None)
        if m is None:
            return None, idx
        out[idx] = m
    return out, None


def f_sub_ip_check(
    S,
    F: Union[FilterBase, TruncatedFilter],
    obj,
    mode: str,
    r: int = 1,
    pool: Sequence[Sequence] = (),
    m_min: int = 1,
) -> Verdict:
    """F_⊆-IP checks.

    mode="sequence": obj is a sequence; every base set must contain some FP tail.
    mode="set_r":    obj contains FP(x_m..x_{m+r}) for some certified pool x and m >= m_min.
    mode="star_r":   obj meets every such block.
    """
    if mode == "sequence":
        x = tuple(obj)
        tails, failed = _certify_sequence(S, F, x)
        bounds = {"L": len(x)}
        if tails is None:
            return Verdict(Status.REFUTED_WITHIN_BOUNDS, {"base_index": failed}, bounds)
        return Verdict(Status.ESTABLISHED, {"tail_index": tails}, bounds)
    if mode not in ("set_r", "star_r"):
        raise ValueError(f"unknown mode {mode!r}")
    if not pool:
        raise PreconditionError("set_r/star_r need a nonempty pool of sequences")
    certified = []
    for i, x in enumerate(pool):
        tails, _ = _certify_sequence(S, F, tuple(x))
        if tails is not None:
            certified.append((i, tuple(x)))
    if not certified:
        raise PreconditionError("no pool sequence is certified F_⊆-IP")
    bounds = {"r": r, "m_min": m_min, "pool_certified": [i for i, _ in certified]}
    for i, x in certified:
        for m in range(m_min, len(x) - r + 1):
            block = fp_values(S, x, m, m + r)
            if mode == "set_r" and all(v in obj for v in block):
                return Verdict(Status.ESTABLISHED, {"pool_index": i, "m": m}, bounds)
            if mode == "star_r" and not any(v in obj for v in block):
                return Verdict(Status.REFUTED_WITHIN_BOUNDS, {"pool_index": i, "m": m}, bounds)
    if mode == "set_r":
        return Verdict(Status.REFUTED_WITHIN_BOUNDS, None, bounds)
    return Verdict(Status.ESTABLISHED, {"blocks_met": True}, bounds)
