"""H-freeness of groups and fusion systems.

A group is H-free when no section B/A is isomorphic to H.  A fusion system
is H-free when H is involved in none of the constrained models L_Q, for Q
running over the centric, radical, fully normalized subgroups (the range is
conjunctive).  Witnesses are always materialized so failures are auditable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import affine_qd_perms, catalog_group
from .errors import (
    HypothesisViolated,
    InternalInconsistency,
    UnsupportedPrime,
)
from .fusion import classify_subgroup
from .groups import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    build_group,
    is_involved,
    mask_of,
    o_p,
    quotient_group,
)
from .subsystems import model_group

_qd_cache = {}


def qd_group(p) -> FiniteGroup:
    """Qd(p) = (Z_p x Z_p) : SL(2,p) as affine maps of the p^2 vectors."""
    if p not in (2, 3):
        raise UnsupportedPrime(f"Qd({p}) is beyond desk scale")
    if p not in _qd_cache:
        g = build_group(affine_qd_perms(p), name=f"Qd({p})", kind="perms")
        expected = p * p * _sl2_order(p)
        assert g.order == expected, f"Qd({p}) has order {g.order}"
        _qd_cache[p] = g
    return _qd_cache[p]


def _sl2_order(p):
    return p * (p * p - 1)


@dataclass(frozen=True)
class HFreeReport:
    """Outcome of an H-freeness test with a materialized witness if not free."""

    target: str
    H: FiniteGroup
    free: bool
    witness: tuple = None   # group: (B, A); fusion system: (Q, L, (B, A))

    def __bool__(self):
        return self.free


def is_group_H_free(G, H, cap=DEFAULT_ORDER_CAP) -> HFreeReport:
    involved, section = is_involved(H, G, cap=cap)
    return HFreeReport(target=G.name, H=H, free=not involved, witness=section)


def centric_radical_fn_subgroups(F):
    """The model range: centric AND radical AND fully normalized."""
    out = []
    for Q in F.objects():
        prof = classify_subgroup(F, Q)
        if prof.centric and prof.radical and prof.fully_normalized:
            out.append(Q)
    return out


def is_fusion_H_free(F, H, cap=DEFAULT_ORDER_CAP) -> HFreeReport:
    """H-freeness through the models L_Q, never through the ambient group."""
    for Q in centric_radical_fn_subgroups(F):
        model = model_group(F, Q)
        involved, section = is_involved(H, model.L, cap=cap)
        if involved:
            return HFreeReport(target=F.name, H=H, free=False,
                               witness=(Q, model.L, section))
    return HFreeReport(target=F.name, H=H, free=True)


# -- appendix cross-checks ----------------------------------------------------


def subgroup_conjugacy_reps(G, pred=None):
    """One representative per G-conjugacy class of subgroups."""
    seen = set()
    reps = []
    for H in G.subgroups():
        if H.mask in seen:
            continue
        orbit = {H.mask}
        frontier = [H.mask]
        while frontier:
            m = frontier.pop()
            sub = G.subgroup(m)
            for g in G.generators():
                c = sub.conjugate_mask(g)
                if c not in orbit:
                    orbit.add(c)
                    frontier.append(c)
        seen |= orbit
        if pred is None or pred(H):
            reps.append(H)
    return reps


def sigma3_involvement_check(G, cap=DEFAULT_ORDER_CAP):
    """(S4 involved in G, exists 2-subgroup Q with S3 involved in N/C).

    The two answers must agree; disagreement raises InternalInconsistency.
    """
    s4 = catalog_group("S4")
    s3 = catalog_group("S3")
    a, _ = is_involved(s4, G, cap=cap)
    b = False
    for Q in subgroup_conjugacy_reps(
            G, pred=lambda H: H.order > 1 and _is_2_power(H.order)):
        N = Q.normalizer_in(G.full_subgroup)
        C = Q.centralizer_in(N)
        local, embed = N.as_group()
        pos = N.pos_map()
        c_local = local.subgroup(mask_of(pos[x] for x in C.elems))
        NC, _ = quotient_group(local, c_local)
        involved, _ = is_involved(s3, NC, cap=cap)
        if involved:
            b = True
            break
    if a != b:
        raise InternalInconsistency(
            f"S4-involvement ({a}) disagrees with the N/C criterion ({b}) "
            f"on {G.name}")
    return a, b


def _is_2_power(n):
    return n & (n - 1) == 0


def remark67_check(G, cap=DEFAULT_ORDER_CAP):
    """(G is S4-free, G/O_2(G) is S3-free); requires C_G(O_2(G)) <= O_2(G).

    The two answers must agree; disagreement raises InternalInconsistency.
    """
    s4 = catalog_group("S4")
    s3 = catalog_group("S3")
    O2 = o_p(G, 2)
    C = O2.centralizer_in(G.full_subgroup)
    if not C <= O2:
        raise HypothesisViolated(
            f"{G.name}: C_G(O_2(G)) is not contained in O_2(G)")
    a = not is_involved(s4, G, cap=cap)[0]
    Gbar, _ = quotient_group(G, O2, name=f"{G.name}/O2")
    b = not is_involved(s3, Gbar, cap=cap)[0]
    if a != b:
        raise InternalInconsistency(
            f"S4-freeness of {G.name} ({a}) disagrees with S3-freeness of "
            f"the O_2-quotient ({b})")
    return a, b
