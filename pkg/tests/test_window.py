import itertools

import pytest
from hypothesis import given, settings, strategies as st

from centralsets.errors import BoundsError, ParseError
from centralsets.largeness import Status
from centralsets.window import (
    CstBounds,
    CstWitnessChain,
    WindowSet,
    classify_window,
    cst_witness_commutative,
    fs_window,
    parse_window_set,
    verify_cst_chain,
)


def pow2blocks(W):
    return {x for n in range(1, 12) for x in range(2**n, 2**n + n + 1) if x <= W}


def test_parse_terms():
    assert parse_window_set("mod 2,0", 10).sorted() == [2, 4, 6, 8, 10]
    assert parse_window_set("range 1-3,8-9", 10).sorted() == [1, 2, 3, 8, 9]
    assert parse_window_set("1,4,9", 10).sorted() == [1, 4, 9]
    assert parse_window_set("all", 3).sorted() == [1, 2, 3]
    assert set(parse_window_set("pow2blocks", 100).members) == pow2blocks(100)
    assert parse_window_set("mod 2,0 & pow2blocks", 20).sorted() == [2, 4, 6, 8, 10, 16, 18, 20]
    for bad in ("mod 0,1", "range a-b", "primes"):
        with pytest.raises(ParseError):
            parse_window_set(bad, 10)


def test_evens_are_syndetic():
    v = classify_window(parse_window_set("mod 2,0", 100), gap=2, block=6)
    assert v["syndetic"].established
    assert v["thick"].status is Status.REFUTED_WITHIN_BOUNDS


def test_pow2_blocks_are_thick_in_window():
    A = parse_window_set("pow2blocks", 100)
    v = classify_window(A, gap=2, block=6)
    assert v["thick"].established
    lo, hi = v["thick"].witness["interval"]
    assert hi - lo + 1 == 6 and all(x in A for x in range(lo, hi + 1))
    # the first run of length 6 is [32,37]; [64,70] is another one
    assert (lo, hi) == (32, 37)
    assert all(x in A for x in range(64, 71))
    assert not v["syndetic"].established


def test_even_pow2_blocks_are_pws():
    A = parse_window_set("mod 2,0 & pow2blocks", 200)
    v = classify_window(A, gap=2, block=3)
    assert v["pws"].established
    assert not v["thick"].established
    g = v["pws"].witness["g"]
    lo, hi = v["pws"].witness["interval"]
    assert all(any(x + s in A for s in range(g + 1)) for x in range(lo, hi + 1))


def test_classify_bounds():
    with pytest.raises(BoundsError):
        classify_window(WindowSet(10, frozenset({1})), gap=0, block=2)


def test_fs_window_examples():
    assert fs_window((1, 2, 4)) == set(range(1, 8))
    assert fs_window((2, 4, 8, 16, 32), 3) == {8, 16, 24, 32, 40, 48, 56}
    assert fs_window((5, 6), 2, 2) == {6}


def test_theorem_one_shape_desk_scale():
    A = parse_window_set("mod 2,0", 400)
    ys = [tuple(range(1, 21)), tuple(range(2, 41, 2))]
    v = cst_witness_commutative(A, ys, 2)
    assert v.established
    chain = v.witness
    assert max(chain.H[0]) < min(chain.H[1])
    assert verify_cst_chain(A, ys, chain) == []


def test_cst_depth_one_full_window():
    A = parse_window_set("all", 50)
    v = cst_witness_commutative(A, [tuple(range(1, 6))], 1)
    assert v.witness == CstWitnessChain(1, (1,), ((1,),))


def test_cst_odds_with_even_sequence():
    A = parse_window_set("mod 2,1", 200)
    ys = [(2,) * 10]
    v = cst_witness_commutative(A, ys, 2)
    # a_1 + 2 and a_2 + 2 odd force a_1 + a_2 + 4 even, which leaves A
    assert v.status is Status.REFUTED_WITHIN_BOUNDS


def brute_cst(A, ys, depth, bounds):
    t_max = bounds.t_max or min(len(y) for y in ys)
    Hs = [H for s in range(1, bounds.h_size + 1) for H in itertools.combinations(range(1, t_max + 1), s)]
    for choice in itertools.product(itertools.product(Hs, range(1, bounds.a_max + 1)), repeat=depth):
        Hseq = [c[0] for c in choice]
        if any(max(h1) >= min(h2) for h1, h2 in zip(Hseq, Hseq[1:])):
            continue
        chain = CstWitnessChain(depth, tuple(c[1] for c in choice), tuple(Hseq))
        if not verify_cst_chain(A, ys, chain):
            return True
    return False


@settings(max_examples=40, deadline=None)
@given(st.sets(st.integers(1, 30), min_size=1), st.lists(st.integers(1, 4), min_size=4, max_size=4))
def test_cst_search_complete_against_brute_force(members, y):
    A = WindowSet(30, frozenset(members))
    bounds = CstBounds(a_max=4, h_size=2)
    v = cst_witness_commutative(A, [tuple(y)], 2, bounds)
    assert v.established == brute_cst(A, [tuple(y)], 2, bounds)
    if v.established:
        assert verify_cst_chain(A, [tuple(y)], v.witness) == []


def test_chain_validation():
    with pytest.raises(ValueError):
        CstWitnessChain(2, (1, 1), ((1, 2), (2,)))
    with pytest.raises(ValueError):
        CstWitnessChain(1, (1,), ((2, 1),))
