"""Thompson-subgroup machinery on a finite p-group S.

J(S) is the subgroup generated by the abelian subgroups of S of largest
order; A(S) = Omega(Z(S)) and B(S) = Omega(Z(J(S))) are the inner and outer
anchors of every W(S) computation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotAPGroup
from .groups import (
    DEFAULT_AUT_CAP,
    Subgroup,
    automorphisms_raw,
    bits,
    mask_of,
    omega_mask,
)


def p_of(sub: Subgroup):
    """The prime p for a p-group subgroup; raises NotAPGroup otherwise."""
    n = sub.order
    if n == 1:
        raise NotAPGroup("trivial group has no defining prime")
    p = 2
    while n % p != 0:
        p += 1
    while n % p == 0:
        n //= p
    if n != 1:
        raise NotAPGroup(f"order {sub.order} is not a prime power")
    return p


@dataclass(frozen=True)
class ThompsonData:
    """J(S) together with the witnesses that generated it."""

    S: Subgroup
    p: int
    max_abelian_order: int
    max_abelian_subgroups: tuple
    J: Subgroup
    A: Subgroup
    B: Subgroup


def thompson_data(S: Subgroup) -> ThompsonData:
    """J(S), A(S) = Omega(Z(S)) and B(S) = Omega(Z(J(S))) for a p-group S."""
    p = p_of(S)
    G = S.parent
    abelians = [H for H in S.subgroups_within() if H.is_abelian()]
    best = max(H.order for H in abelians)
    witnesses = tuple(H for H in abelians if H.order == best)
    jgens = [g for H in witnesses for g in H.generators()]
    J = G.subgroup(G.closure_mask(jgens, 1))
    A = G.subgroup(omega_mask(G, S.center().mask, p))
    B = G.subgroup(omega_mask(G, J.centralizer_in(J).mask, p))
    assert A <= B, "A(S) <= B(S) must hold (Z(S) <= J(S))"
    return ThompsonData(S=S, p=p, max_abelian_order=best,
                        max_abelian_subgroups=witnesses, J=J, A=A, B=B)


def is_characteristic(W: Subgroup, S: Subgroup, cap=DEFAULT_AUT_CAP) -> bool:
    """alpha(W) = W for every alpha in Aut(S) (full enumeration)."""
    if not W <= S:
        raise NotAPGroup("W must be a subgroup of S")
    group, embed = S.as_group()
    pos = S.pos_map()
    local = mask_of(pos[x] for x in W.elems)
    wbits = list(bits(local))
    for images in automorphisms_raw(group, cap=cap):
        if mask_of(images[b] for b in wbits) != local:
            return False
    return True
