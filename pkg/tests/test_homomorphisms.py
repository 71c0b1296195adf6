import pytest
from hypothesis import given, settings, strategies as st

import oracles
from centralsets.corpus import cyclic_group, right_zero, symmetric_group
from centralsets.errors import PreconditionError, ValidationError
from centralsets.filters import FilterBase, closure_set
from centralsets.homomorphisms import (
    Homomorphism,
    enumerate_homomorphisms,
    is_good_homomorphism,
    preimage_lemma_check,
    sweep_homomorphisms,
    verify_preservation,
)
from centralsets.largeness import SequenceFamily, eval_x
from centralsets.semigroup import FiniteSemigroup, enumerate_semigroups

Z4, Z2 = cyclic_group(4), cyclic_group(2)
MOD2 = Homomorphism(Z4, Z2, [0, 1, 0, 1])
SMALL = [S for n in (1, 2, 3) for S in enumerate_semigroups(n)]


def fb(S, *literals):
    return FilterBase([S.parse_set(l) for l in literals])


def test_homomorphism_validation():
    with pytest.raises(ValidationError):
        Homomorphism(Z4, Z2, [0, 1, 1, 0])
    with pytest.raises(ValidationError):
        Homomorphism(Z4, Z2, [0, 1])
    with pytest.raises(ValidationError):
        Homomorphism(Z4, Z2, [0, 1, 0, 2])


@pytest.mark.parametrize("S", SMALL[:9], ids=str)
@pytest.mark.parametrize("T", SMALL[:9], ids=str)
def test_enumeration_against_brute_force(S, T):
    found = {phi.map for phi in enumerate_homomorphisms(S, T)}
    expected = {
        m for m in oracles.all_maps(S.order, T.order) if oracles.is_homomorphism(S.table, T.table, m)
    }
    assert found == expected


def test_trivial_filters_are_always_good():
    S3 = symmetric_group(3)
    for phi in enumerate_homomorphisms(S3, Z2):
        assert is_good_homomorphism(phi, FilterBase.trivial(S3), FilterBase.trivial(Z2))[0]
        assert preimage_lemma_check(phi, FilterBase.trivial(S3), FilterBase.trivial(Z2))


def test_mod2_goodness_by_scope():
    F, G = fb(Z4, "0,2"), fb(Z2, "0")
    ok, pairing = is_good_homomorphism(MOD2, F, G, scope="base")
    assert ok and pairing[Z4.subset([0, 2])] == Z2.subset([0])
    # {0,1,2} lies in the generated filter but is not a full preimage
    ok, pairing = is_good_homomorphism(MOD2, F, G)
    assert not ok and Z4.subset([0, 1, 2]) in pairing
    assert not is_good_homomorphism(MOD2, fb(Z4, "0"), G, scope="base")[0]
    assert preimage_lemma_check(MOD2, F, G, scope="base")
    with pytest.raises(PreconditionError):
        preimage_lemma_check(MOD2, F, G)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(SMALL), st.sampled_from(SMALL), st.data())
def test_preimage_lemma_whenever_good(S, T, data):
    homs = list(enumerate_homomorphisms(S, T))
    phi = data.draw(st.sampled_from(homs))
    B = S.subset(data.draw(st.sets(st.integers(0, S.order - 1), min_size=1)))
    C = T.subset(data.draw(st.sets(st.integers(0, T.order - 1), min_size=1)))
    scope = data.draw(st.sampled_from(["filter", "base"]))
    F, G = FilterBase([B]), FilterBase([C])
    if is_good_homomorphism(phi, F, G, scope)[0]:
        assert preimage_lemma_check(phi, F, G, scope)
        assert phi.preimage(closure_set(T, G)) <= closure_set(S, F)


def test_identity_preserves_certificate():
    R = right_zero(3)
    idm = Homomorphism(R, R, [0, 1, 2])
    F = FilterBase.trivial(R)
    A = R.subset([2])
    rep = verify_preservation(idm, F, F, A)
    assert rep.image == A and rep.in_scope and not rep.falsified
    assert rep.conclusion.witness == rep.hypotheses["source_pws"].witnesses


def test_right_zero_surjection():
    R3, R2 = right_zero(3), right_zero(2)
    phi = Homomorphism(R3, R2, [0, 1, 1])
    rep = verify_preservation(phi, FilterBase.trivial(R3), FilterBase.trivial(R2), R3.subset([2]))
    assert rep.image == R2.subset([1]) and rep.conclusion_holds


def test_pws_hypotheses_must_hold():
    Z6 = cyclic_group(6)
    idm = Homomorphism(Z6, Z6, range(6))
    F = fb(Z6, "0,2,4")
    with pytest.raises(PreconditionError):
        verify_preservation(idm, F, F, Z6.subset([1]))


def test_out_of_scope_failure_is_not_a_falsification():
    # ({0,1}, ·) with 0 absorbing; filters {S} and {{1}}; A = {0}
    S = FiniteSemigroup([[0, 0], [0, 1]])
    idm = Homomorphism(S, S, [0, 1])
    rep = verify_preservation(idm, FilterBase.trivial(S), fb(S, "1"), S.subset([0]))
    assert not rep.conclusion_holds
    assert not rep.in_scope and not rep.falsified


def test_fj_mode_documented_instances():
    fam = SequenceFamily([(1,) * 8, (0, 1) * 4])
    rep = verify_preservation(
        MOD2, FilterBase.trivial(Z4), FilterBase.trivial(Z2), Z4.subset([0, 2]), "fj", target_family=fam
    )
    assert rep.in_scope and not rep.falsified and rep.details["transfer_ok"]
    w = rep.conclusion.witness
    assert all(eval_x(Z2, w, f) in rep.image for f in fam)
    idm = Homomorphism(Z4, Z4, range(4))
    F = fb(Z4, "0,2")
    fam = SequenceFamily([(2,) * 8, (0, 2) * 4])
    rep = verify_preservation(idm, F, F, Z4.subset([0]), "fj", target_family=fam)
    assert not rep.falsified and rep.details["transfer_ok"]


def test_fj_mode_preconditions():
    with pytest.raises(PreconditionError):
        verify_preservation(MOD2, FilterBase.trivial(Z4), FilterBase.trivial(Z2), Z4.full(), "fj")
    with pytest.raises(PreconditionError):
        # the family leaves the target closure, so it is not G-good
        verify_preservation(
            Homomorphism(Z4, Z4, range(4)), fb(Z4, "0,2"), fb(Z4, "0,2"), Z4.full(), "fj",
            target_family=SequenceFamily([(1,) * 4]),
        )


def test_sweep_small_groups_with_principal_filters():
    groups = [cyclic_group(n) for n in (1, 2, 3, 4)]
    rep = sweep_homomorphisms(groups, "principal")
    assert rep.clean and rep.in_scope > 0
