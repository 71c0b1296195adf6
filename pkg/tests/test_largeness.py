import itertools

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from centralsets.corpus import bundled_corpus, cyclic_group, left_zero, right_zero, zmod_mult
from centralsets.errors import BoundsError, PreconditionError, SearchCancelled
from centralsets.largeness import (
    CancelToken,
    JWitness,
    SequenceFamily,
    Status,
    Verdict,
    eval_x,
    find_j_witness,
    fp_set,
    is_central,
    is_ip_r_star_bounded,
    is_j_set_bounded,
    is_piecewise_syndetic,
    is_syndetic,
    is_thick,
    zfp_k,
)
from centralsets.semigroup import INTEGERS, enumerate_semigroups

SMALL = [S for n in (1, 2, 3) for S in enumerate_semigroups(n)]
CORPUS = [S for _, S in bundled_corpus()]


def test_thick_examples():
    R, L = right_zero(2), left_zero(2)
    assert is_thick(R, R.subset([1])) == (True, 1)
    assert is_thick(L, L.subset([0])) == (False, None)
    assert is_thick(L, L.full())[0]


def test_syndetic_examples():
    L, R = left_zero(2), right_zero(2)
    ok, G = is_syndetic(L, L.subset([0]))
    assert ok and G.members == (0,)
    assert is_syndetic(R, R.subset([0])) == (False, None)
    ok, G = is_syndetic(R, R.full())
    assert ok and len(G) == 1


def test_pws_examples():
    M = zmod_mult(4)
    r = is_piecewise_syndetic(M, M.subset([0]))
    assert r.combinatorial and r.algebraic and r.agree
    r = is_piecewise_syndetic(M, M.subset([1, 3]))
    assert not r.combinatorial and not r.algebraic
    r = is_piecewise_syndetic(M, M.empty())
    assert not r.combinatorial and not r.algebraic


def test_central_examples():
    R, M = right_zero(2), zmod_mult(4)
    assert is_central(R, R.subset([1])) == (True, 1)
    assert is_central(M, M.subset([1])) == (False, None)
    for S in CORPUS:
        assert is_central(S, S.full())[0]


def test_fp_examples():
    assert fp_set(INTEGERS, (1, 2, 4)) == frozenset(range(1, 8))
    Z4 = cyclic_group(4)
    assert fp_set(Z4, (2, 2)).members == (0, 2)
    assert fp_set(Z4, (1, 2, 3), 2, 2).members == (2,)
    with pytest.raises(BoundsError):
        fp_set(Z4, (1, 2), 2, 3)


def test_zfp_examples():
    fam = SequenceFamily([(1, 1), (2, 2)])
    assert zfp_k(INTEGERS, fam, 1) == frozenset({1, 2, 3, 4})
    one = SequenceFamily([(1, 2, 4, 8)])
    assert zfp_k(INTEGERS, one, 2) == fp_set(INTEGERS, (1, 2, 4, 8), 2, 4)


def test_eval_x_examples():
    Z6 = cyclic_group(6)
    assert eval_x(Z6, JWitness(2, (1, 2, 3), (1, 3)), (5, 0, 5)) == 4
    assert eval_x(Z6, JWitness(1, (0, 0), (2,)), (5, 3, 1)) == 3
    R = right_zero(3)
    assert eval_x(R, JWitness(2, (0, 1, 2), (1, 2)), (0, 1)) == 2


def test_j_witness_shape_is_validated():
    with pytest.raises(ValueError):
        JWitness(2, (0, 0), (1, 2))
    with pytest.raises(ValueError):
        JWitness(2, (0, 0, 0), (2, 2))
    with pytest.raises(ValueError):
        Verdict(Status.ESTABLISHED, None, {})


def test_j_set_examples():
    Z4 = cyclic_group(4)
    assert is_j_set_bounded(Z4, Z4.full(), SequenceFamily([(1, 2)]), 1).witness.m == 1
    v = is_j_set_bounded(Z4, Z4.subset([0]), SequenceFamily([(1, 1, 1, 1)]), 2)
    assert v.established
    # first in (m, t, a) order, frozen from the brute-force oracle below
    assert v.witness == JWitness(1, (0, 3), (1,))
    assert is_j_set_bounded(Z4, Z4.empty(), SequenceFamily([(1, 1)]), 2).status is Status.REFUTED_WITHIN_BOUNDS
    with pytest.raises(BoundsError):
        is_j_set_bounded(Z4, Z4.full(), SequenceFamily([(1,)]), 2)


def test_ip_r_star_examples():
    Z6 = cyclic_group(6)
    assert is_ip_r_star_bounded(Z6, Z6.full(), 2).established
    v = is_ip_r_star_bounded(Z6, Z6.subset([0, 3]), 2)
    assert v.status is Status.REFUTED_EXACTLY
    x, y = v.witness
    assert not {x, y, (x + y) % 6} & {0, 3}
    assert is_ip_r_star_bounded(Z6, Z6.empty(), 3).status is Status.REFUTED_EXACTLY
    with pytest.raises(PreconditionError):
        is_ip_r_star_bounded(Z6, Z6.full(), 7)


def test_cancel_token():
    tok = CancelToken()
    tok.cancel()
    Z4 = cyclic_group(4)
    with pytest.raises(SearchCancelled):
        find_j_witness(Z4, Z4.subset([0]), SequenceFamily([(1, 1, 1)]), 2, cancel=tok)


def brute_j(S, A, family, max_m, min_t=1):
    """First (m, t, a) in the documented order, by plain enumeration."""
    for m in range(1, max_m + 1):
        for t in itertools.combinations(range(min_t, family.L + 1), m):
            for a in itertools.product(range(S.order), repeat=m + 1):
                if all(oracles.eval_j(S.mul, a, t, f) in A for f in family):
                    return JWitness(m, a, t)
    return None


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(SMALL + CORPUS[:8]), st.data())
def test_j_search_is_lex_first(S, data):
    n = S.order
    A = S.subset(data.draw(st.sets(st.integers(0, n - 1))))
    L = data.draw(st.integers(1, 4))
    seqs = data.draw(st.lists(st.tuples(*[st.integers(0, n - 1)] * L), min_size=1, max_size=3))
    fam = SequenceFamily(seqs)
    max_m = min(2, L)
    expected = brute_j(S, A, fam, max_m)
    assert find_j_witness(S, A, fam, max_m, path="general") == expected
    if S.commutative:
        assert find_j_witness(S, A, fam, max_m, path="commutative") == expected


def test_commutative_path_rejects_noncommutative():
    R = right_zero(2)
    with pytest.raises(PreconditionError):
        find_j_witness(R, R.full(), SequenceFamily([(0, 1)]), 1, path="commutative")


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SMALL + CORPUS), st.data())
def test_pws_combinatorial_matches_definition(S, data):
    A = set(data.draw(st.sets(st.integers(0, S.order - 1))))
    r = is_piecewise_syndetic(S, S.subset(A))
    t = [list(row) for row in S.table]
    assert r.combinatorial == oracles.pws_by_definition(t, A)
    assert r.agree


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(SMALL + CORPUS), st.data())
def test_thick_and_syndetic_imply_pws(S, data):
    A = S.subset(data.draw(st.sets(st.integers(0, S.order - 1))))
    pws = is_piecewise_syndetic(S, A).combinatorial
    if is_thick(S, A)[0] or is_syndetic(S, A)[0]:
        assert pws


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(SMALL + CORPUS), st.data())
def test_zfp_is_monotone_in_k(S, data):
    n = S.order
    L = data.draw(st.integers(2, 4))
    seqs = data.draw(st.lists(st.tuples(*[st.integers(0, n - 1)] * L), min_size=1, max_size=3))
    fam = SequenceFamily(seqs)
    for k in range(1, L):
        assert zfp_k(S, fam, k + 1) <= zfp_k(S, fam, k)
    single = SequenceFamily([seqs[0]])
    assert zfp_k(S, single, 1) == fp_set(S, seqs[0])
    assert set(fp_set(S, seqs[0])) == oracles.finite_products(S.mul, list(seqs[0]))
