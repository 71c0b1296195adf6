
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from centralsets.corpus import bundled_corpus, cyclic_group, named, right_zero
from centralsets.errors import ParseError, UniverseMismatch, UnsupportedStructureError, ValidationError
from centralsets.semigroup import (
    ElementSet,
    enumerate_semigroups,
    format_semigroup,
    is_subgroup,
    parse_semigroup,
    translate_preimage,
    validate_table,
)


def test_parse_z2_slash_form():
    S = parse_semigroup("2 / 0 1 / 1 0")
    assert S.order == 2 and S.identity == 0 and S.commutative


def test_parse_right_zero():
    S = parse_semigroup("2 / 0 1 / 0 1")
    assert S.identity is None
    assert all(S.mul(x, x) == x for x in S.elements)
    assert all(S.mul(x, y) == y for x in S.elements for y in S.elements)


def test_parse_max_table_is_associative():
    # 0·0=0, 0·1=1, 1·0=1, 1·1=1 is max on {0,1}
    S = parse_semigroup("2 / 0 1 / 1 1")
    assert S.identity == 0
    assert oracles.is_associative(S.table)


def test_non_associative_table_reports_counterexample():
    with pytest.raises(ValidationError) as exc:
        parse_semigroup("2\n0 0\n1 0\n")
    x, y, z = exc.value.counterexample
    t = ((0, 0), (1, 0))
    assert t[t[x][y]][z] != t[x][t[y][z]]


def test_parse_comments_and_names():
    S = parse_semigroup("# z2\n2\n0 1\n1 0\nnames: e a\n")
    assert S.names == ("e", "a")
    assert S.parse_set("a") == S.subset([1])
    assert S.format_set(S.full()) == "e,a"


@pytest.mark.parametrize(
    "text",
    ["", "2\n0 1\n", "2\n0 1\n1 x\n", "2\n0 1\n1 2\n", "0\n", "2\n0 1\n1 0\nnames: a\n", "2\n0 1 0\n1 0\n"],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_semigroup(text)


def test_format_round_trip():
    for _, S in bundled_corpus():
        assert parse_semigroup(format_semigroup(S, "x")) == S


def test_translate_preimage_examples():
    Z4 = cyclic_group(4)
    assert translate_preimage(Z4, Z4.subset([1]), Z4.subset([0])) == Z4.subset([3])
    R = right_zero(2)
    assert translate_preimage(R, R.subset([0]), R.subset([1])) == R.subset([1])
    assert translate_preimage(R, R.empty(), R.full()) == R.empty()


def test_subgroup_examples():
    Z6, Z4 = cyclic_group(6), cyclic_group(4)
    assert is_subgroup(Z6, Z6.subset([0, 2, 4]))[0]
    ok, cert = is_subgroup(Z6, Z6.subset([0, 2]))
    assert not ok and cert.failure
    ok, cert = is_subgroup(Z4, Z4.subset([0, 2]), require_normal=True)
    assert ok and cert.identity == 0 and cert.inverses[2] == 2


def test_normality_needs_a_group():
    R = right_zero(2)
    with pytest.raises(UnsupportedStructureError):
        is_subgroup(R, R.subset([0]), require_normal=True)


def test_s3_normal_subgroups():
    S3 = named("S3")
    A3 = S3.parse_set("012,120,201")
    assert is_subgroup(S3, A3, require_normal=True)[0]
    transposition = S3.parse_set("012,021")
    assert is_subgroup(S3, transposition)[0]
    assert not is_subgroup(S3, transposition, require_normal=True)[0]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_enumeration_count_matches_brute_force(n):
    tables = list(enumerate_semigroups(n))
    assert len(tables) == oracles.count_semigroups(n)
    assert len({S.table for S in tables}) == len(tables)


def test_enumeration_known_counts_and_predicate():
    assert [len(list(enumerate_semigroups(n))) for n in (1, 2, 3)] == [1, 8, 113]
    assert len(list(enumerate_semigroups(2, lambda S: S.commutative))) == 6


@pytest.mark.parametrize("n", [0, 4])
def test_enumeration_order_cap(n):
    with pytest.raises(ValueError):
        list(enumerate_semigroups(n))


def test_universe_mismatch():
    with pytest.raises(UniverseMismatch):
        ElementSet.of(3, [0]) | ElementSet.of(4, [0])


def test_element_set_enumeration_orders():
    B = ElementSet.of(4, [1])
    sups = list(B.supersets())
    assert sups[0] == B and len(sups) == 8
    assert [len(s) for s in sups] == sorted(len(s) for s in sups)
    subs = list(ElementSet.of(3, [0, 1, 2]).subsets(nonempty=True))
    assert [s.members for s in subs] == [(0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]


def test_empty_product_needs_identity():
    assert cyclic_group(3).product([]) == 0
    with pytest.raises(Exception):
        right_zero(2).product([])


tables3 = st.lists(st.lists(st.integers(0, 2), min_size=3, max_size=3), min_size=3, max_size=3)


@settings(max_examples=200, deadline=None)
@given(tables3)
def test_validation_matches_oracle(table):
    assert validate_table(table).associative == oracles.is_associative(table)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([S for _, S in bundled_corpus()]), st.data())
def test_set_algebra_laws(S, data):
    a = ElementSet.of(S.order, data.draw(st.sets(st.integers(0, S.order - 1))))
    b = ElementSet.of(S.order, data.draw(st.sets(st.integers(0, S.order - 1))))
    assert (a | b).complement() == a.complement() & b.complement()
    assert a - b <= a
    assert S.parse_set(S.format_set(a)) == a
    left = S.set_product(a, b)
    assert set(left) == {S.mul(x, y) for x in a for y in b}
