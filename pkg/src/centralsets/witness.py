"""Witness extraction from the constructive proofs.

* ``j_witness_via_hj``: colour the zigzag products of a good family by the
  least translate that pushes them into A, take a monochromatic
  combinatorial line, and read off a J-witness.
* ``cst_build``: the induction over subsets of a list of families that
  produces m, alpha, tau for the filter-relative Central Sets Theorem.
* ``ipr_star_extract`` / ``j_to_ipstar_extract``: the pigeonhole and
  cancellation arguments for subgroups.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import (
    BoundsError,
    InvariantViolation,
    PreconditionError,
    ResourceCapError,
    WitnessError,
)
from .filters import (
    FilterBase,
    closure_set,
    is_F_central,
    is_F_good_bounded,
    pws_F_certificate,
    _check_good_certificate,
    _require_subsemigroup,
)
from .hales_jewett import STAR, hj_number, mono_lines
from .largeness import (
    CancelToken,
    JWitness,
    SequenceFamily,
    Status,
    Verdict,
    eval_x,
    is_j_set_bounded,
)
from .semigroup import ElementSet, FiniteSemigroup, is_subgroup, translate_preimage

__all__ = [
    "star_set",
    "j_witness_via_hj",
    "CSTWitnessMap",
    "cst_build",
    "cst_verify",
    "AmbientGroup",
    "Subgroup",
    "IprExtraction",
    "ipr_star_extract",
    "j_to_ipstar_extract",
]

DEFAULT_HJ_CAP = 4


def star_set(S: FiniteSemigroup, e: int, A: ElementSet) -> ElementSet:
    """{x : x·e ∈ A}, i.e. the x with x^{-1}A in the principal ultrafilter at e."""
    if S.mul(e, e) != e:
        raise PreconditionError(f"{S.label(e)} is not idempotent")
    return S.subset(x for x in S.elements if S.mul(x, e) in A)


def _family_value(family, letter, position):
    return family.sequences[letter - 1][position - 1]


def j_witness_via_hj(
    S: FiniteSemigroup,
    F: FilterBase,
    A: ElementSet,
    family: SequenceFamily,
    V: Optional[ElementSet] = None,
    floor_m: int = 0,
    certificate: Optional[Verdict] = None,
    hj_cap: int = DEFAULT_HJ_CAP,
    cancel: Optional[CancelToken] = None,
):
    """Returns ``(witness, trace)`` with x(m, a, t, f) ∈ A for every f and t(1) > floor_m."""
    B = _require_subsemigroup(S, F)
    V = B if V is None else V
    family.check_in(S)
    trace: dict = {"closure": B, "V": V, "floor_m": floor_m}

    cert = pws_F_certificate(S, F, A, V)
    if cert is None:
        raise PreconditionError(f"{S.format_set(A)} is not piecewise F-syndetic at V={S.format_set(V)}")
    F_V, W_V, y = cert
    trace.update(F_V=F_V, W_V=W_V, y=y)

    if certificate is None:
        certificate = is_F_good_bounded(S, F, family, family.L)
    k = _check_good_certificate(S, F, family, certificate).k
    r = len(F_V)
    alphabet = len(family)
    trace.update(k=k, r=r)

    hj = hj_number(r, alphabet, hj_cap, cancel)
    if hj.value is None:
        raise ResourceCapError(f"HJ({r},{alphabet}) exceeds cap {hj_cap}", trace=trace)
    N = hj.value
    trace["N"] = N

    # shift: use positions base+1..base+N so every index exceeds floor_m
    base = k + floor_m
    if base + N > family.L:
        raise BoundsError(f"need sequences of length >= {base + N}, have {family.L}")
    trace["positions"] = tuple(range(base + 1, base + N + 1))

    colors_by_t = F_V.members
    coloring = {}
    for word in itertools.product(range(1, alphabet + 1), repeat=N):
        x = S.product(_family_value(family, letter, base + i + 1) for i, letter in enumerate(word))
        if x not in W_V:
            raise InvariantViolation(f"zigzag product {x} escaped W_V")
        color = next((ci for ci, t in enumerate(colors_by_t) if S.mul(S.mul(t, x), y) in A), None)
        if color is None:
            raise InvariantViolation(f"no t in F_V sends {x} into A")
        coloring[word] = color
    trace["coloring"] = coloring

    line = None
    for candidate in mono_lines(coloring, N, alphabet):
        stars = [i for i, c in enumerate(candidate.template) if c == STAR]
        adjacent = any(b == a + 1 for a, b in zip(stars, stars[1:]))
        if not adjacent or S.identity is not None:
            line = candidate
            break
    if line is None:
        raise WitnessError(
            "every monochromatic line has adjacent variable positions and S has no identity",
            trace=trace,
        )
    trace["line"] = line

    t_color = colors_by_t[coloring[line.points[0]]]
    template = line.template
    stars = [i for i, c in enumerate(template) if c == STAR]

    def fixed_product(lo, hi):
        vals = [_family_value(family, template[i], base + i + 1) for i in range(lo, hi)]
        return vals

    a = []
    head = [t_color] + fixed_product(0, stars[0])
    a.append(S.product(head))
    for s0, s1 in zip(stars, stars[1:]):
        a.append(S.product(fixed_product(s0 + 1, s1)))
    tail = fixed_product(stars[-1] + 1, N) + [y]
    a.append(S.product(tail))
    w = JWitness(len(stars), tuple(a), tuple(base + i + 1 for i in stars))
    for f in family:
        if eval_x(S, w, f) not in A:
            raise InvariantViolation(f"extracted witness {w} fails for sequence {f}")
    return w, trace


@dataclass
class CSTWitnessMap:
    families: list
    target: ElementSet
    idempotent: int
    entries: dict = field(default_factory=dict)  # subset (tuple of family indices) -> JWitness

    @property
    def domain(self) -> list:
        return sorted(self.entries, key=lambda G: (len(G), G))

    def sequences(self, G) -> list:
        out = []
        for i in G:
            for s in self.families[i].sequences:
                if s not in out:
                    out.append(s)
        return out


def _union_family(families, G):
    fam = families[G[0]]
    for i in G[1:]:
        fam = fam.union(families[i])
    return fam


def _proper_subsets(G):
    for size in range(1, len(G)):
        yield from itertools.combinations(G, size)


def cst_build(
    S: FiniteSemigroup,
    F: FilterBase,
    A: ElementSet,
    families: Sequence[SequenceFamily],
    size_cap: int = 3,
    hj_cap: int = DEFAULT_HJ_CAP,
    cancel: Optional[CancelToken] = None,
) -> CSTWitnessMap:
    """m, alpha, tau for every nonempty subset G of ``families``, built in size order."""
    if len(families) > size_cap:
        raise ResourceCapError(f"{len(families)} families exceed size cap {size_cap}")
    central, e = is_F_central(S, F, A)
    if not central:
        raise PreconditionError(f"{S.format_set(A)} is not F-central")
    B = closure_set(S, F)
    # x ∈ A with x^{-1}A ∈ p; the "x ∈ A" part is what puts chain products in A
    A_star = A & star_set(S, e, A)
    wmap = CSTWitnessMap(list(families), A, e)
    chain_products: dict = {}

    subsets = [G for size in range(1, len(families) + 1) for G in itertools.combinations(range(len(families)), size)]
    for G in subsets:
        fam = _union_family(families, G)
        M = set()
        for H in _proper_subsets(G):
            M |= chain_products[H]
        B_set = A_star
        for z in M:
            B_set = B_set & translate_preimage(S, S.subset([z]), A_star)
        if e not in B_set:
            raise InvariantViolation(f"idempotent {e} fell out of B for subset {G}")
        floor = max((wmap.entries[H].t[-1] for H in _proper_subsets(G)), default=0)
        good = is_F_good_bounded(S, F, fam, fam.L)
        if not good.established:
            raise WitnessError(f"union family for subset {G} is not F-good within its length")
        try:
            w, _ = j_witness_via_hj(S, F, B_set, fam, B, floor, good, hj_cap, cancel)
        except (BoundsError, WitnessError, ResourceCapError) as exc:
            raise WitnessError(
                f"witness search failed for subset {G} with B={S.format_set(B_set)}: {exc}",
                trace={"subset": G, "B": B_set, "floor": floor},
            ) from exc
        wmap.entries[G] = w
        own = {eval_x(S, w, f) for f in fam}
        prods = set(own)
        for H in _proper_subsets(G):
            for p in chain_products[H]:
                prods |= {S.mul(p, v) for v in own}
        chain_products[G] = prods

    ok, failures = cst_verify(S, A, wmap)
    if not ok:
        raise InvariantViolation(f"cst_build output fails verification: {failures[:3]}")
    return wmap


def _chains(domain):
    """Every strictly increasing chain G_1 ⊊ ... ⊊ G_n in the domain."""
    sets = {G: frozenset(G) for G in domain}

    def extend(chain):
        yield chain
        last = sets[chain[-1]]
        for G in domain:
            if last < sets[G]:
                yield from extend(chain + (G,))

    for G in domain:
        yield from extend((G,))


def cst_verify(S: FiniteSemigroup, A: ElementSet, wmap: CSTWitnessMap, chains=None):
    """Re-evaluate both conclusions; returns ``(ok, failures)``."""
    failures = []
    domain = wmap.domain
    for G in domain:
        for Fs in domain:
            if set(G) < set(Fs) and not wmap.entries[G].t[-1] < wmap.entries[Fs].t[0]:
                failures.append(("tau-order", G, Fs))
    for chain in (_chains(domain) if chains is None else chains):
        seq_lists = [wmap.sequences(G) for G in chain]
        for picks in itertools.product(*seq_lists):
            acc = None
            for G, f in zip(chain, picks):
                v = eval_x(S, wmap.entries[G], f)
                acc = v if acc is None else S.table[acc][v]
            if acc not in A:
                failures.append(("product", chain, picks, acc))
    return not failures, failures


@dataclass(frozen=True)
class AmbientGroup:
    """Z, Z/nZ, or a finite group given by a Cayley table."""

    model: str
    n: Optional[int] = None
    S: Optional[FiniteSemigroup] = None

    def __post_init__(self):
        if self.model == "zmod" and (self.n is None or self.n < 1):
            raise ValueError("zmod needs a positive modulus")
        if self.model == "cayley":
            if self.S is None or not self.S.is_group():
                raise PreconditionError("cayley ambient must be a group")
        if self.model not in ("z", "zmod", "cayley"):
            raise ValueError(f"unknown ambient model {self.model!r}")

    @property
    def identity(self):
        return self.S.identity if self.model == "cayley" else 0

    @property
    def commutative(self) -> bool:
        return self.model != "cayley" or self.S.commutative

    def op(self, a, b):
        if self.model == "z":
            return a + b
        if self.model == "zmod":
            return (a + b) % self.n
        return self.S.mul(a, b)

    def inv(self, a):
        if self.model == "z":
            return -a
        if self.model == "zmod":
            return (-a) % self.n
        return self.S.inverse(a)

    def elements(self):
        if self.model == "z":
            return None
        return range(self.n) if self.model == "zmod" else self.S.elements


@dataclass(frozen=True)
class Subgroup:
    """kZ inside Z, or an explicit subset of a finite ambient."""

    multiple: Optional[int] = None
    members: Optional[frozenset] = None

    def __contains__(self, x):
        if self.multiple is not None:
            return x % self.multiple == 0
        return x in self.members


@dataclass(frozen=True)
class IprExtraction:
    m: int
    n: int
    block: object
    color: object
    prefixes: tuple
    colors: tuple


def _check_syndetic_cover(G_amb: AmbientGroup, Gsub: Subgroup, H):
    if G_amb.model == "z":
        k = Gsub.multiple
        if k is None or k < 1:
            raise PreconditionError("subgroups of Z are given as kZ with k >= 1")
        points = range(k)
    else:
        points = G_amb.elements()
    for x in points:
        if not any(G_amb.op(t, x) in Gsub for t in H):
            raise PreconditionError(f"translates by H do not cover {x}")


def ipr_star_extract(G_amb: AmbientGroup, Gsub: Subgroup, H: Sequence, xs: Sequence) -> IprExtraction:
    """Indices m < n with x_{m+1}···x_n ∈ Gsub, by pigeonhole on the least
    t ∈ H putting each prefix product into Gsub.  Requires len(xs) = |H|+1."""
    H = list(H)
    if len(set(H)) != len(H) or not H:
        raise PreconditionError("H must be a nonempty set")
    if len(xs) != len(H) + 1:
        raise PreconditionError(f"need |H|+1 = {len(H) + 1} terms, got {len(xs)}")
    if G_amb.model == "cayley":
        members = ElementSet.of(G_amb.S.order, Gsub.members)
        ok, _ = is_subgroup(G_amb.S, members, require_normal=True)
        if not ok:
            raise PreconditionError("Gsub must be a normal subgroup of the ambient group")
    elif G_amb.model == "zmod":
        els = set(Gsub.members)
        if 0 not in els or any((a + b) % G_amb.n not in els for a in els for b in els):
            raise PreconditionError("Gsub is not a subgroup of Z/nZ")
    _check_syndetic_cover(G_amb, Gsub, H)

    y = G_amb.identity
    prefixes = []
    colors = []
    acc = None
    seen = {}
    for n, x in enumerate(xs, start=1):
        acc = x if acc is None else G_amb.op(acc, x)
        prefixes.append(acc)
        t = next(t for t in H if G_amb.op(G_amb.op(t, acc), y) in Gsub)
        colors.append(t)
        if t in seen:
            m = seen[t]
            block = xs[m]
            for v in xs[m + 1:n]:
                block = G_amb.op(block, v)
            if block not in Gsub:
                raise InvariantViolation(f"pigeonhole block {block} not in subgroup")
            return IprExtraction(m, n, block, t, tuple(prefixes), tuple(colors))
        seen[t] = n
    raise InvariantViolation("pigeonhole failed with |H|+1 prefixes")


def j_to_ipstar_extract(S: FiniteSemigroup, Gsub: ElementSet, f: Sequence[int], max_m: int) -> Verdict:
    """Finite sum of f landing in Gsub, via a J-witness for {f, 0⃗}.

    From a + Σ_{t∈H} 0 ∈ Gsub and a + Σ_{t∈H} f(t) ∈ Gsub, cancel a inside Gsub.
    """
    if not S.commutative or S.identity is None:
        raise PreconditionError("ambient must be a commutative monoid")
    ok, cert = is_subgroup(S, Gsub)
    if not ok:
        raise PreconditionError(f"Gsub is not a subgroup: {cert.failure}")
    if cert.identity != S.identity:
        raise PreconditionError("Gsub must contain the identity of S")
    zero = S.identity
    family = SequenceFamily([tuple(f), tuple(zero for _ in f)])
    verdict = is_j_set_bounded(S, Gsub, family, max_m)
    if not verdict.established:
        return Verdict(Status.INCONCLUSIVE, None, verdict.bounds)
    w = verdict.witness
    a = S.product(w.a)
    if a not in Gsub:
        raise InvariantViolation("zero-sequence evaluation left the subgroup")
    shifted = S.mul(a, S.product(f[t - 1] for t in w.t))
    total = S.mul(cert.inverses[a], shifted)
    if total != S.product(f[t - 1] for t in w.t) or total not in Gsub:
        raise InvariantViolation("cancellation did not recover the finite sum")
    return Verdict(
        Status.ESTABLISHED,
        {"H": w.t, "sum": total, "a": a, "j_witness": w},
        verdict.bounds,
    )
