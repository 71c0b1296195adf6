"""(F,G)-good homomorphisms and preservation checks for images of large sets.

The preservation theorems are run as harnesses: certify the hypotheses,
compute the image, check the conclusion.  A certified instance whose
conclusion fails is reported as a falsification event.

The theorems are stated for groups (and, for piecewise syndeticity, for
subgroups A).  With trivial filters the piecewise syndetic statement holds
for every finite semigroup, so that case is in scope too.  Failures outside
the stated scope are reported but are not falsifications: they do occur,
e.g. the identity map of ({0,1},·) with filters {S} and {{1}} and A={0}.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Optional

from .errors import PreconditionError, ValidationError
from .filters import (
    FilterBase,
    closure_set,
    is_F_good_bounded,
    is_F_J_bounded,
    is_pws_F_syndetic,
)
from .largeness import JWitness, SequenceFamily, Status, Verdict, eval_x, find_j_witness
from .semigroup import ElementSet, FiniteSemigroup, is_subgroup

__all__ = [
    "Homomorphism",
    "enumerate_homomorphisms",
    "is_good_homomorphism",
    "preimage_lemma_check",
    "PreservationReport",
    "verify_preservation",
    "SweepReport",
    "sweep_homomorphisms",
]


@dataclass(frozen=True)
class Homomorphism:
    source: FiniteSemigroup
    target: FiniteSemigroup
    map: tuple[int, ...]

    def __init__(self, source, target, mapping):
        mapping = tuple(int(v) for v in mapping)
        if len(mapping) != source.order:
            raise ValidationError(f"map has {len(mapping)} entries, source has order {source.order}")
        if any(not 0 <= v < target.order for v in mapping):
            raise ValidationError("map values must be target elements")
        for x in source.elements:
            for y in source.elements:
                if mapping[source.mul(x, y)] != target.mul(mapping[x], mapping[y]):
                    raise ValidationError(
                        f"not a homomorphism at ({x},{y})", counterexample=(x, y)
                    )
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "map", mapping)

    def __call__(self, x: int) -> int:
        return self.map[x]

    def image(self, A: ElementSet) -> ElementSet:
        return self.target.subset(self.map[x] for x in A)

    def preimage(self, X: ElementSet) -> ElementSet:
        return self.source.subset(x for x in self.source.elements if self.map[x] in X)


def enumerate_homomorphisms(S: FiniteSemigroup, T: FiniteSemigroup):
    """All homomorphisms S -> T, by backtracking over the images of 0, 1, ..."""
    n = S.order
    phi = [-1] * n

    def ok():
        for x in range(n):
            if phi[x] < 0:
                continue
            for y in range(n):
                if phi[y] < 0:
                    continue
                xy = S.mul(x, y)
                if phi[xy] >= 0 and phi[xy] != T.mul(phi[x], phi[y]):
                    return False
        return True

    def go(i):
        if i == n:
            yield Homomorphism(S, T, phi)
            return
        for v in T.elements:
            phi[i] = v
            if ok():
                yield from go(i + 1)
        phi[i] = -1

    yield from go(0)


def is_good_homomorphism(phi: Homomorphism, F: FilterBase, G: FilterBase, scope: str = "filter"):
    """Is every set of F a full preimage of a set of G?

    scope="filter" ranges over every member of the generated filter (all
    supersets of the closure); scope="base" only over the listed base sets.
    Returns ``(ok, pairing)``; on failure the pairing maps the offending set
    to None.
    """
    Fc = closure_set(phi.source, F)
    Gc = closure_set(phi.target, G)
    sets = list(Fc.supersets()) if scope == "filter" else list(F.base)
    if scope not in ("filter", "base"):
        raise ValueError(f"unknown scope {scope!r}")
    pairing = {}
    for X in sets:
        # any G' with φ^{-1}(G') = X must meet φ(S) exactly in φ(X); the
        # smallest admissible choice also has to contain Gc
        candidate = phi.image(X) | Gc
        if phi.preimage(candidate) != X:
            pairing[X] = None
            return False, pairing
        pairing[X] = candidate
    return True, pairing


def preimage_lemma_check(phi: Homomorphism, F: FilterBase, G: FilterBase, scope: str = "filter") -> bool:
    """φ^{-1}(closure G) ⊆ closure F, for a good φ."""
    good, _ = is_good_homomorphism(phi, F, G, scope)
    if not good:
        raise PreconditionError("homomorphism is not (F,G)-good")
    return phi.preimage(closure_set(phi.target, G)) <= closure_set(phi.source, F)


@functools.lru_cache(maxsize=1 << 16)
def _pws(S, F, A):
    # sweeps ask the same (S, F, A) question for many homomorphisms
    return is_pws_F_syndetic(S, F, A)


@dataclass
class PreservationReport:
    mode: str
    image: ElementSet
    hypotheses: dict
    conclusion: Verdict
    in_scope: bool
    details: dict = field(default_factory=dict)

    @property
    def conclusion_holds(self) -> bool:
        return self.conclusion.established

    @property
    def falsified(self) -> bool:
        return self.in_scope and not self.conclusion_holds


def _in_scope(phi, F, G, A, mode):
    S, T = phi.source, phi.target
    trivial = closure_set(S, F) == S.full() and closure_set(T, G) == T.full()
    if mode == "pws" and trivial:
        return True
    if not (S.is_group() and T.is_group()):
        return False
    return mode == "fj" or is_subgroup(S, A)[0]


def verify_preservation(
    phi: Homomorphism,
    F: FilterBase,
    G: FilterBase,
    A: ElementSet,
    mode: str = "pws",
    scope: str = "filter",
    target_family: Optional[SequenceFamily] = None,
    max_m: int = 2,
    k_max: Optional[int] = None,
    blocks: int = 2,
) -> PreservationReport:
    """Certify hypotheses, compute φ(A), check the matching conclusion.

    mode="pws": φ(S) piecewise G-syndetic and A piecewise F-syndetic
    ⇒ φ(A) piecewise G-syndetic (exact on finite targets).  ``scope`` is
    passed to the goodness check.

    mode="fj": bounded.  ``target_family`` must be G-good.  φ(S) is certified
    G-J by ``blocks`` successive witnesses on disjoint index ranges; their
    evaluations form sequences in φ(S), which are lifted to the source by
    least-index preimages.  A must be F-J against the lifted family; the
    resulting witness is pushed forward and expanded into a witness for
    φ(A) against the original target family.
    """
    S, T = phi.source, phi.target
    good, _ = is_good_homomorphism(phi, F, G, scope)
    if not good:
        raise PreconditionError("homomorphism is not (F,G)-good")
    image = phi.image(A)
    if mode == "pws":
        img_S = _pws(T, G, phi.image(S.full()))
        src = _pws(S, F, A)
        if not (img_S.combinatorial and src.combinatorial):
            raise PreconditionError("pws hypotheses are not certified")
        concl = _pws(T, G, image)
        status = Status.ESTABLISHED if concl.combinatorial else Status.REFUTED_EXACTLY
        verdict = Verdict(status, concl.witnesses if concl.combinatorial else None, {})
        return PreservationReport(
            "pws",
            image,
            {"image_pws": img_S, "source_pws": src},
            verdict,
            in_scope=_in_scope(phi, F, G, A, "pws"),
        )
    if mode != "fj":
        raise ValueError(f"unknown mode {mode!r}")
    if target_family is None:
        raise PreconditionError("fj mode needs a target family")
    k_max = target_family.L if k_max is None else k_max
    good_t = is_F_good_bounded(T, G, target_family, k_max)
    if not good_t.established:
        raise PreconditionError("target family is not certified G-good")

    # successive witnesses for φ(S) with disjoint, increasing index blocks
    img_S = phi.image(S.full())
    block_ws: list[JWitness] = []
    floor = 1
    for _ in range(blocks):
        w = find_j_witness(T, img_S, target_family, max_m, min_t=floor)
        if w is None:
            raise PreconditionError("φ(S) is not certified G-J within bounds")
        block_ws.append(w)
        floor = w.t[-1] + 1
    lifted_image = [tuple(eval_x(T, w, f) for w in block_ws) for f in target_family]
    least_pre = {}
    for x in S.elements:
        least_pre.setdefault(phi(x), x)
    lifted = SequenceFamily([tuple(least_pre[v] for v in seq) for seq in lifted_image])
    good_s = is_F_good_bounded(S, F, lifted, lifted.L)
    if not good_s.established:
        raise PreconditionError("lifted source family is not certified F-good")
    src = is_F_J_bounded(S, F, A, lifted, min(max_m, lifted.L), good_s)
    if not src.established:
        raise PreconditionError("A is not certified F-J against the lifted family")
    w_src = src.witness

    # push forward and expand: f'(n) = x(m_n, a_n, t_n, f)
    coeffs: list[int] = []
    positions: list[int] = []
    carry = phi(w_src.a[0])
    for j, n in enumerate(w_src.t):
        bw = block_ws[n - 1]
        coeffs.append(T.mul(carry, bw.a[0]))
        coeffs.extend(bw.a[1:bw.m])
        positions.extend(bw.t)
        carry = T.mul(bw.a[bw.m], phi(w_src.a[j + 1]))
    coeffs.append(carry)
    transferred = JWitness(len(positions), tuple(coeffs), tuple(positions))
    transfer_ok = all(eval_x(T, transferred, f) in image for f in target_family)

    direct = None
    if not transfer_ok:
        direct = find_j_witness(T, image, target_family, max_m)
    holds = transfer_ok or direct is not None
    conclusion = Verdict(
        Status.ESTABLISHED if holds else Status.REFUTED_WITHIN_BOUNDS,
        transferred if transfer_ok else direct,
        {"max_m": max_m, "blocks": blocks},
    )
    return PreservationReport(
        "fj",
        image,
        {"target_good": good_t, "image_J_blocks": block_ws, "lifted_family": lifted,
         "lifted_good": good_s, "source_J": src},
        conclusion,
        in_scope=_in_scope(phi, F, G, A, "fj"),
        details={"transferred": transferred, "transfer_ok": transfer_ok},
    )


@dataclass(frozen=True)
class SweepReport:
    semigroups: int
    homomorphisms: int
    instances: int
    in_scope: int
    falsifications: tuple
    out_of_scope_failures: int

    @property
    def clean(self) -> bool:
        return not self.falsifications


def _closures(S):
    return [B for B in S.full().subsets(nonempty=True) if S.set_product(B, B) <= B]


def sweep_homomorphisms(semigroups, filters: str = "trivial") -> SweepReport:
    """pws-mode harness over every homomorphism between the given semigroups
    and every nonempty A.

    filters="trivial" uses {S} on both sides; filters="principal" ranges over
    every pair of subsemigroup closures for which φ is good.  Instances whose
    hypotheses fail are skipped.
    """
    if filters not in ("trivial", "principal"):
        raise ValueError(f"unknown filter mode {filters!r}")
    semigroups = list(semigroups)
    homs = instances = scoped = outside = 0
    bad = []
    for S in semigroups:
        subsets = list(S.full().subsets(nonempty=True))
        Fs = [FilterBase.trivial(S)] if filters == "trivial" else [FilterBase([B]) for B in _closures(S)]
        for T in semigroups:
            Gs = [FilterBase.trivial(T)] if filters == "trivial" else [FilterBase([C]) for C in _closures(T)]
            for phi in enumerate_homomorphisms(S, T):
                homs += 1
                for F in Fs:
                    for G in Gs:
                        if not is_good_homomorphism(phi, F, G)[0]:
                            continue
                        for A in subsets:
                            try:
                                report = verify_preservation(phi, F, G, A)
                            except PreconditionError:
                                continue
                            instances += 1
                            scoped += report.in_scope
                            if report.falsified:
                                bad.append((phi, F, G, A))
                            elif not report.conclusion_holds:
                                outside += 1
    return SweepReport(len(semigroups), homs, instances, scoped, tuple(bad), outside)
