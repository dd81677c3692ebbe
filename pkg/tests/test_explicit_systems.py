"""Explicit systems must behave exactly like their realized counterparts,
and axiom verification must pinpoint each kind of defect."""

import pytest

from fusionlab.fusion import (
    FusionSystem,
    alperin_decompose,
    classify_subgroup,
    essential_subgroups,
    fusion_equal,
    verify_axioms,
    wrap_tuple,
)
from fusionlab.subsystems import (
    category_closure,
    is_normal_in_F,
    normalizer_system,
    o_p_of_F,
)


@pytest.fixture()
def explicit_copy(systems):
    F = systems[("S4", 2)]
    E = FusionSystem.explicit_system(F.host, 2, F.carrier, F.materialize(),
                                     name="explicit-copy")
    return F, E


def test_explicit_copy_equals_realized(explicit_copy):
    F, E = explicit_copy
    assert fusion_equal(E, F)
    assert verify_axioms(E).status == "verified"


def test_explicit_copy_classifies_identically(explicit_copy):
    F, E = explicit_copy
    for Q in F.objects():
        pf = classify_subgroup(F, Q)
        pe = classify_subgroup(E, Q)
        assert (pf.fully_normalized, pf.fully_centralized, pf.centric,
                pf.radical, pf.essential) == \
               (pe.fully_normalized, pe.fully_centralized, pe.centric,
                pe.radical, pe.essential)
    assert [x.mask for x in essential_subgroups(F)[0]] == \
           [x.mask for x in essential_subgroups(E)[0]]


def test_explicit_copy_normality_and_core(explicit_copy):
    F, E = explicit_copy
    for W in F.objects():
        assert is_normal_in_F(F, W)[0] == is_normal_in_F(E, W)[0]
    assert o_p_of_F(E).mask == o_p_of_F(F).mask


def test_explicit_copy_alperin(explicit_copy):
    F, E = explicit_copy
    for P in E.objects():
        for t in E.maps(P):
            deco = alperin_decompose(E, wrap_tuple(E, P, E.carrier, t))
            assert deco.recompose() == dict(zip(P.elems, t))


def test_explicit_copy_subsystems(explicit_copy):
    F, E = explicit_copy
    for Q in F.objects():
        if not F.is_fully_normalized(Q):
            continue
        nf = normalizer_system(F, Q)
        ne = normalizer_system(E, Q)
        assert fusion_equal(nf, ne)


def test_fs2_failure_detected(cat):
    """C4 with its inversion spliced into Aut(S) fails exactly FS2 (the
    inner automorphisms are no longer a Sylow 2-subgroup of Aut_F(S))."""
    c4 = cat["C4"]
    S = c4.full_subgroup
    inv_tuple = tuple(c4.inv[x] for x in S.elems)
    spliced = category_closure(c4, 2, S, {S.mask: (inv_tuple,)},
                               name="c4-with-inversion")
    report = verify_axioms(spliced)
    assert report.status == "failed"
    assert report.witness[0] == "FS2"


def test_missing_inclusion_detected(cat):
    v4 = cat["V4"]
    S = v4.full_subgroup
    c2 = next(H for H in S.subgroups_within() if H.order == 2)
    maps = {P.mask: ((P.elems),) for P in S.subgroups_within()}
    maps[c2.mask] = ()   # drop every morphism, including the inclusion
    broken = FusionSystem(v4, 2, S, explicit=maps, name="broken")
    report = verify_axioms(broken)
    assert report.status == "failed"
    assert report.witness[0] == "missing-inclusion"


def test_straighten_two_step_chain(systems):
    """Z(SD16) then its characteristic overgroup C8 = J(SD16)."""
    from fusionlab.pgroups import thompson_data
    from fusionlab.subsystems import straighten_chain

    F = systems[("GL(2,3)", 2)]
    S = F.carrier
    z = S.center()
    j = thompson_data(S).J
    assert j.order == 8
    phi, images = straighten_chain(F, [z, j])
    assert all(F.is_fully_normalized(img) for img in images)
    assert phi.domain.mask == F.n_in_carrier(j).mask
