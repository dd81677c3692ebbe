"""Randomized invariants over small permutation groups."""

from hypothesis import HealthCheck, given, settings, strategies as st

from fusionlab.groups import (
    build_group,
    is_isomorphic,
    quotient_group,
    sylow,
)

POOL = [
    (1, 0, 2, 3, 4),          # (1 2)
    (0, 2, 1, 3, 4),          # (2 3)
    (1, 2, 0, 3, 4),          # (1 2 3)
    (0, 1, 2, 4, 3),          # (4 5)
    (1, 0, 3, 2, 4),          # (1 2)(3 4)
    (2, 3, 0, 1, 4),          # (1 3)(2 4)
    (1, 2, 3, 0, 4),          # (1 2 3 4)
    (0, 2, 3, 4, 1),          # (2 3 4 5)
]

group_specs = st.lists(st.sampled_from(POOL), min_size=0, max_size=2)

COMMON = dict(deadline=None, max_examples=30,
              suppress_health_check=[HealthCheck.data_too_large])


@settings(**COMMON)
@given(group_specs)
def test_built_groups_satisfy_axioms(gens):
    g = build_group([list(p) for p in gens], kind="perms", cap=200)
    n = g.order
    assert g.mul(0, 0) == 0
    for x in range(n):
        assert g.mul(x, g.inv[x]) == 0
        for y in range(n):
            for z in (0, min(x, y)):
                assert g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z))


@settings(**COMMON)
@given(group_specs)
def test_lattice_closed_under_meet_and_conjugation(gens):
    g = build_group([list(p) for p in gens], kind="perms", cap=200)
    subs = g.subgroups()
    masks = {H.mask for H in subs}
    for H in subs:
        for K in subs:
            assert (H.mask & K.mask) in masks
        for x in range(g.order):
            assert H.conjugate_mask(x) in masks


@settings(**COMMON)
@given(group_specs, st.sampled_from([2, 3, 5]))
def test_sylow_has_full_p_part(gens, p):
    g = build_group([list(p_) for p_ in gens], kind="perms", cap=200)
    syl = sylow(g, p)
    rest = g.order // syl.order
    assert syl.order * rest == g.order
    assert rest % p != 0
    k = syl.order
    while k > 1:
        assert k % p == 0
        k //= p


@settings(**COMMON)
@given(group_specs)
def test_quotients_by_normal_subgroups_project(gens):
    g = build_group([list(p) for p in gens], kind="perms", cap=200)
    full = g.full_subgroup
    for H in g.subgroups():
        if not H.is_normal_in(full):
            continue
        q, proj = quotient_group(g, H)
        assert q.order * H.order == g.order
        assert proj.kernel_mask() == H.mask


@settings(**COMMON)
@given(group_specs)
def test_isomorphism_is_reflexive_and_detects_relabeling(gens):
    g = build_group([list(p) for p in gens], kind="perms", cap=200)
    ok, w = is_isomorphic(g, g)
    assert ok and w.is_bijective()
    # reversing the generator order relabels the BFS indexing
    relabeled = build_group([list(p) for p in reversed(gens)], kind="perms",
                            cap=200)
    ok2, _ = is_isomorphic(g, relabeled)
    assert ok2


@settings(**COMMON)
@given(group_specs, st.sampled_from([2, 3]))
def test_thompson_anchors_nested(gens, p):
    from fusionlab.pgroups import thompson_data

    g = build_group([list(q) for q in gens], kind="perms", cap=200)
    s = sylow(g, p)
    if s.order == 1:
        return
    td = thompson_data(s)
    assert td.A <= td.B
    assert td.B <= td.J
    assert td.J <= s
    assert td.A.order > 1
