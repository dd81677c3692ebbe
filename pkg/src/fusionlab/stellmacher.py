"""The characteristic subgroup W(S) computed relative to a candidate family.

The family-relative analogue of the class of admissible embeddings: an
abstract model S, plus realized members identified with S by an explicit
isomorphism, each admitted when J(S) is normal in the member and the member
is Qd(p)-free.  Closure of the admissibility class under precomposition
with Aut(S) is modelled by testing (and growing along) the whole Aut(S)
orbit of the current subgroup, which is what makes the result
characteristic and independent of the chosen identifications.

Two constructions are computed: the iterative orbit-closure chain
W_0 < W_1 < ... (the canonical value) and the one-shot generation from
images of W_0 = Omega(Z(S)) under morphisms defined on J(S); the provable
containment W_oneshot <= W_iter is asserted on every run and equality is
reported.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotAPGroup, SandwichViolated, SylowMismatch
from .fusion import FusionSystem, classify_subgroup, mask_of
from .groups import (
    FiniteGroup,
    Subgroup,
    automorphisms_raw,
    bits,
    is_isomorphic,
    sylow,
)
from .hfree import is_fusion_H_free, qd_group
from .pgroups import is_characteristic, thompson_data
from .subsystems import is_normal_in_F, model_group, o_p_of_F


@dataclass(frozen=True)
class FamilyMember:
    """A realized system whose carrier is identified with the model S."""

    system: FusionSystem
    identification: tuple       # model index -> host index of the carrier
    j_normal: bool
    qd_free: bool

    @property
    def admitted(self):
        return self.j_normal and self.qd_free

    def push_mask(self, local_mask):
        return mask_of(self.identification[i] for i in bits(local_mask))

    def pull_mask(self, host_mask):
        back = {h: i for i, h in enumerate(self.identification)}
        return mask_of(back[x] for x in bits(host_mask))


@dataclass(frozen=True)
class CandidateFamily:
    """An abstract p-group model S together with identified members."""

    S: FiniteGroup
    p: int
    members: tuple

    def admitted_members(self):
        return tuple(m for m in self.members if m.admitted)

    def reordered(self, order):
        return CandidateFamily(S=self.S, p=self.p,
                               members=tuple(self.members[i] for i in order))


def admit_member(S: FiniteGroup, G: FiniteGroup, p: int) -> FamilyMember:
    """Realize F on G's Sylow p-subgroup, identify it with S, and compute
    the admission flags (J(S) normal in F, F Qd(p)-free)."""
    P = sylow(G, p)
    local, embed = P.as_group()
    ok, iso = is_isomorphic(S, local)
    if not ok:
        raise SylowMismatch(
            f"Sylow {p}-subgroup of {G.name} is not isomorphic to {S.name}")
    identification = tuple(embed[iso(i)] for i in range(S.order))
    F = FusionSystem.realized(G, p, P)
    J = thompson_data(P).J
    j_normal, _ = is_normal_in_F(F, J)
    qd_free = is_fusion_H_free(F, qd_group(p)).free
    member = FamilyMember(system=F, identification=identification,
                          j_normal=j_normal, qd_free=qd_free)
    if member.admitted:
        _assert_constrained(F)
    return member


def _assert_constrained(F):
    """Admitted members are constrained: J(S) is centric, and the model of
    O_p(F) is p-constrained (C_L(O_p(L)) <= O_p(L))."""
    J = thompson_data(F.carrier).J
    prof = classify_subgroup(F, J)
    assert prof.centric, "J(S) must be centric when it is normal in F"
    Q = o_p_of_F(F)
    model = model_group(F, Q)
    L = model.L
    QL = model.push_subgroup(Q)
    from .groups import o_p as _o_p

    opl = _o_p(L, F.p)
    assert QL <= opl or QL.mask == opl.mask
    C = opl.centralizer_in(L.full_subgroup)
    assert C <= opl, "model is not p-constrained"


def canonical_family(S_sub: Subgroup, p: int, extras=(),
                     include_catalog=True) -> CandidateFamily:
    """The inner system on S plus every admitted member built from catalog
    groups (and the extra groups) whose Sylow p-subgroup matches S."""
    from .catalog import CATALOG_NAMES, catalog_group

    model, embed = S_sub.as_group()
    inner = FusionSystem.inner(S_sub, p)
    J = thompson_data(S_sub).J
    jn, _ = is_normal_in_F(inner, J)
    # every model of an inner system is a p-group, and Qd(p) is not
    inner_member = FamilyMember(system=inner, identification=embed,
                                j_normal=jn, qd_free=True)
    members = [inner_member]
    pool = []
    if include_catalog:
        pool.extend(catalog_group(name) for name in CATALOG_NAMES)
    pool.extend(extras)
    for G in pool:
        if G.order == model.order or G.order % model.order != 0:
            continue
        P = sylow(G, p)
        if P.order != model.order:
            continue
        try:
            members.append(admit_member(model, G, p))
        except SylowMismatch:
            continue
    return CandidateFamily(S=model, p=p, members=tuple(members))


_family_cache = {}


def cached_canonical_family(S_sub, p):
    key = (S_sub.as_group()[0].table_hash(), p)
    if key not in _family_cache:
        _family_cache[key] = canonical_family(S_sub, p)
    return _family_cache[key]


@dataclass(frozen=True)
class WComputation:
    """The growth chain and both W values for one family."""

    family: CandidateFamily
    chain: tuple                 # masks over the model S, strictly increasing
    witnesses: tuple             # (member index, aut index, grown-from mask)
    W_iter: Subgroup             # subgroup of the model S
    W_oneshot: Subgroup
    equal: bool
    A: Subgroup
    B: Subgroup


def compute_W_iterative(family: CandidateFamily) -> WComputation:
    """Grow W_0 = Omega(Z(S)) until its whole Aut(S)-orbit is normal in
    every admitted member; each growth step replaces W by the preimage of
    the subgroup generated by the member-orbit of the failing image."""
    S = family.S
    if S.order == 1:
        raise NotAPGroup("W(S) is defined for nontrivial p-groups only")
    full = S.full_subgroup
    td = thompson_data(full)
    a_mask, b_mask = td.A.mask, td.B.mask
    auts = automorphisms_raw(S)
    admitted = family.admitted_members()
    w = a_mask
    chain = [w]
    witnesses = []
    while True:
        failure = _first_normality_failure(S, auts, admitted, w)
        if failure is None:
            break
        mi, ai, w_image_local = failure
        member = admitted[mi]
        alpha = auts[ai]
        grown_local = _member_orbit_closure(S, member, w_image_local)
        w_new = _apply_aut_mask(S, _aut_inverse(S, alpha), grown_local)
        if not (_subset(a_mask, w) and _subset(w, w_new) and w != w_new
                and _subset(w_new, b_mask)):
            raise SandwichViolated(
                "growth step left Omega(Z(S)) <= W < W' <= Omega(Z(J(S))); "
                "the family contains an inconsistent member")
        witnesses.append((mi, ai, w))
        w = w_new
        chain.append(w)
    W_iter = S.subgroup(w)
    W_oneshot = compute_W_oneshot(family)
    assert W_oneshot <= W_iter, "one-shot W must sit inside the iterative W"
    return WComputation(family=family, chain=tuple(chain),
                        witnesses=tuple(witnesses), W_iter=W_iter,
                        W_oneshot=W_oneshot, equal=W_oneshot.mask == w,
                        A=S.subgroup(a_mask), B=S.subgroup(b_mask))


def _subset(a, b):
    return a & ~b == 0


def _apply_aut_mask(S, images, mask):
    return mask_of(images[i] for i in bits(mask))


def _aut_inverse(S, images):
    inv = [0] * S.order
    for i, v in enumerate(images):
        inv[v] = i
    return inv


def _first_normality_failure(S, auts, admitted, w):
    """(member idx, aut idx, failing local image) for the first admitted
    member, in canonical order, with some Aut(S)-translate of w not normal."""
    for mi, member in enumerate(admitted):
        seen = set()
        for ai, alpha in enumerate(auts):
            w_local = _apply_aut_mask(S, alpha, w)
            if w_local in seen:
                continue
            seen.add(w_local)
            host_sub = member.system.host.subgroup(member.push_mask(w_local))
            ok, _ = is_normal_in_F(member.system, host_sub)
            if not ok:
                return mi, ai, w_local
    return None


def _member_orbit_closure(S, member, w_local):
    """Preimage of <psi(W) : psi in Hom_F(W, S)> under the identification."""
    F = member.system
    host = F.host
    target = host.subgroup(member.push_mask(w_local))
    gens = set(target.elems)
    for t in F.maps(target):
        gens.update(t)
    join_mask = host.closure_mask(sorted(gens), 1)
    return member.pull_mask(join_mask)


def compute_W_oneshot(family: CandidateFamily) -> Subgroup:
    """<psi(W_0) : psi in Hom_F(J(S), S), F admitted>, closed under Aut(S)
    (the class of admissible categories is stable under transport by S's
    automorphisms, so the family-relative value must be too)."""
    S = family.S
    if S.order == 1:
        raise NotAPGroup("W(S) is defined for nontrivial p-groups only")
    full = S.full_subgroup
    td = thompson_data(full)
    w0 = td.A.mask
    gens = set(bits(w0))
    for member in family.admitted_members():
        F = member.system
        host = F.host
        J = thompson_data(F.carrier).J
        w0_host = host.subgroup(member.push_mask(w0))
        jpos = J.pos_map()
        for t in F.maps(J):
            img = [t[jpos[x]] for x in w0_host.elems]
            gens.update(bits(member.pull_mask(mask_of(img))))
    raw = S.closure_mask(sorted(gens), 1)
    orbit_gens = set()
    for alpha in automorphisms_raw(S):
        orbit_gens.update(alpha[i] for i in bits(raw))
    result = S.closure_mask(sorted(orbit_gens), 1)
    W = S.subgroup(result)
    assert _subset(w0, result) and _subset(result, td.B.mask), \
        "one-shot W must satisfy A(S) <= W <= B(S)"
    return W


@dataclass(frozen=True)
class FunctorReport:
    """Functor-property verification for one family."""

    characteristic_iter: bool
    characteristic_oneshot: bool
    nontrivial: bool
    order_independent: bool
    identification_independent: bool
    oneshot_contained: bool
    equal: bool
    W_iter: Subgroup
    W_oneshot: Subgroup
    details: dict = field(default_factory=dict, compare=False)

    def all_hold(self):
        return (self.characteristic_iter and self.characteristic_oneshot
                and self.nontrivial and self.order_independent
                and self.identification_independent and self.oneshot_contained)


def functor_checks(S: FiniteGroup, family: CandidateFamily) -> FunctorReport:
    """Characteristic/nontrivial checks plus independence of the result from
    the member order and from the choice of identification isomorphisms."""
    wc = compute_W_iterative(family)
    full = S.full_subgroup
    char_iter = is_characteristic(wc.W_iter, full)
    char_one = is_characteristic(wc.W_oneshot, full)
    nontrivial = wc.W_iter.order > 1

    perm_ok = True
    k = len(family.members)
    for order in _test_orders(k):
        other = compute_W_iterative(family.reordered(order))
        if other.W_iter.mask != wc.W_iter.mask:
            perm_ok = False
            break

    ident_ok = True
    auts = automorphisms_raw(S)
    if len(auts) > 1:
        twisted_members = []
        for j, m in enumerate(family.members):
            alpha = auts[(j + 1) % len(auts)]
            twisted = tuple(m.identification[alpha[i]] for i in range(S.order))
            twisted_members.append(FamilyMember(
                system=m.system, identification=twisted,
                j_normal=m.j_normal, qd_free=m.qd_free))
        twisted_family = CandidateFamily(S=S, p=family.p,
                                         members=tuple(twisted_members))
        other = compute_W_iterative(twisted_family)
        ident_ok = other.W_iter.mask == wc.W_iter.mask

    return FunctorReport(
        characteristic_iter=char_iter,
        characteristic_oneshot=char_one,
        nontrivial=nontrivial,
        order_independent=perm_ok,
        identification_independent=ident_ok,
        oneshot_contained=wc.W_oneshot <= wc.W_iter,
        equal=wc.equal,
        W_iter=wc.W_iter,
        W_oneshot=wc.W_oneshot,
        details={"chain_length": len(wc.chain) - 1})


def _test_orders(k):
    if k <= 1:
        return []
    orders = [tuple(reversed(range(k)))]
    if k > 2:
        orders.append(tuple(list(range(1, k)) + [0]))
    return orders
