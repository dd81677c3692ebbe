"""Subsystems and quotients of a fusion system.

Normalizer / centralizer / mixed / product subsystems are computed from the
defining extension rules over materialized hom-sets; when the parent system
has a conjugation source the equivalent realized shortcut is computed too
and the two routes are required to agree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CarrierMismatch,
    ChainConditionViolated,
    InternalInconsistency,
    JoinNotNormal,
    ModelValidationFailed,
    NotCentric,
    NotNormalInF,
)
from .fusion import (
    FusionSystem,
    classify_subgroup,
    compose_tuples,
    conj_tuple,
    identity_tuple,
    invert_tuple,
    is_hom_tuple,
    mask_of,
    restrict_tuple,
    verify_axioms,
    wrap_tuple,
)
from .groups import (
    Subgroup,
    o_p_prime,
    quotient_group,
)
from .pgroups import is_characteristic


# -- normality in F ----------------------------------------------------------


def is_normal_in_F(F, W, use_shortcut=True):
    """Does every morphism extend W-preservingly?  (bool, counterexample).

    W must be normal in the carrier; otherwise the answer is immediately
    False (the normalizer system would live on a smaller carrier).
    """
    F.require_object(W)
    S = F.carrier
    if not W.is_normal_in(S):
        u = next(u for u in S.elems if W.conjugate_mask(u) != W.mask)
        return False, wrap_tuple(F, W, S, conj_tuple(F.host, u, W))
    if W.order == 1:
        return True, None
    if use_shortcut and F.ambient is not None and F._explicit is None:
        return _normal_realized(F, W)
    return _normal_general(F, W)


def _normal_realized(F, W):
    G = F.host
    A = F.ambient
    nw = W.normalizer_in(A)
    smask = F.carrier.mask
    mul = G._mul
    for P in F.objects():
        # g C_A(P) subset-of N_A(W)-cosets test: g in N_A(W) * C_A(P)
        cp = P.centralizer_in(A)
        reach = 0
        for x in nw.elems:
            row = mul[x]
            for c in cp.elems:
                reach |= 1 << row[c]
        pgens = P.generators()
        for g in A.elems:
            if not all(smask >> G.conj(g, x) & 1 for x in pgens):
                continue
            if not reach >> g & 1:
                return False, wrap_tuple(F, P, F.carrier, conj_tuple(G, g, P))
    return True, None


def _normal_general(F, W):
    host = F.host
    wmask = W.mask
    for P in F.objects():
        WP = W.join(P)
        stable = []
        for ext in F.maps(WP):
            if mask_of(restrict_tuple(WP, ext, W)) == wmask:
                stable.append(restrict_tuple(WP, ext, P))
        stable = set(stable)
        for t in F.maps(P):
            if t not in stable:
                return False, wrap_tuple(F, P, F.carrier, t)
    return True, None


def o_p_of_F(F):
    """The largest subgroup normal in F (join of all of them)."""
    S = F.carrier
    join = F.host.subgroup(1)
    for W in F.objects():
        if W.order == 1 or W <= join or not W.is_normal_in(S):
            continue
        ok, _ = is_normal_in_F(F, W)
        if ok:
            join = join.join(W)
    ok, _ = is_normal_in_F(F, join)
    if not ok:
        raise JoinNotNormal("join of normal-in-F subgroups is not normal in F")
    return join


# -- normalizer / centralizer / mixed / product subsystems -------------------


def normalizer_system(F, Q):
    """N_F(Q) on N_S(Q): morphisms that extend to QR -> QT acting on Q as an
    F-automorphism.  Axiom-verified when Q is fully normalized."""
    F.require_object(Q)
    carrier = F.n_in_carrier(Q)
    sysname = f"N_{F.name}(|Q|={Q.order})"
    sub = _extension_subsystem(F, Q, carrier, rule="normalizer", name=sysname)
    if F.is_fully_normalized(Q):
        report = verify_axioms(sub)
        if not report:
            raise InternalInconsistency(
                f"normalizer system of fully normalized Q failed axioms: "
                f"{report.witness}")
    return sub


def centralizer_like_system(F, Q, kind):
    """C_F(Q) on C_S(Q), N_S(Q)C_F(Q) on N_S(Q), or S C_F(Q) on S.

    The extension rule fixes how the extended morphism may act on Q:
    identically (centralizer), as conjugation by N_S(Q) (mixed), or as
    conjugation by S (product; requires Q normal in F).
    """
    F.require_object(Q)
    if kind == "centralizer":
        carrier = F.c_in_carrier(Q)
    elif kind == "mixed":
        carrier = F.n_in_carrier(Q)
    elif kind == "product":
        ok, _ = is_normal_in_F(F, Q)
        if not ok:
            raise NotNormalInF("product system requires Q normal in F")
        carrier = F.carrier
    else:
        raise ValueError(f"unknown kind {kind!r}")
    sysname = f"{kind}_{F.name}(|Q|={Q.order})"
    sub = _extension_subsystem(F, Q, carrier, rule=kind, name=sysname)
    if kind in ("centralizer", "mixed") and F.is_fully_centralized(Q):
        report = verify_axioms(sub)
        if not report:
            raise InternalInconsistency(
                f"{kind} system of fully centralized Q failed axioms: "
                f"{report.witness}")
    return sub


def _extension_subsystem(F, Q, carrier, rule, name):
    host = F.host
    if rule == "normalizer":
        allowed = None  # any F-automorphism of Q
    elif rule == "centralizer":
        allowed = {identity_tuple(Q)}
    elif rule == "mixed":
        allowed = set(F.aut_s_tuples(Q))
    elif rule == "product":
        allowed = {conj_tuple(host, x, Q) for x in F.carrier.elems}
    qmask = Q.mask
    maps_by_domain = {}
    for R in carrier.subgroups_within():
        QR = Q.join(R)
        res = set()
        for ext in F.maps(QR):
            on_q = restrict_tuple(QR, ext, Q)
            if mask_of(on_q) != qmask:
                continue
            if allowed is not None and on_q not in allowed:
                continue
            r = restrict_tuple(QR, ext, R)
            if mask_of(r) & ~carrier.mask:
                raise InternalInconsistency(
                    "restriction escaped the subsystem carrier")
            res.add(r)
        maps_by_domain[R.mask] = tuple(sorted(res))
    ambient = _subsystem_ambient(F, Q, rule)
    sub = FusionSystem.explicit_system(host, F.p, carrier, maps_by_domain,
                                       ambient=ambient, name=name)
    if ambient is not None:
        _check_against_realized(sub, ambient)
    return sub


def _subsystem_ambient(F, Q, rule):
    """The conjugation source realizing the subsystem, when F has one."""
    if F.ambient is None or F._explicit is not None:
        return None
    A = F.ambient
    G = F.host
    if rule == "normalizer":
        return Q.normalizer_in(A)
    if rule == "centralizer":
        return Q.centralizer_in(A)
    if rule == "mixed":
        base = Q.centralizer_in(A)
        return base.join(F.n_in_carrier(Q))
    if rule == "product":
        base = Q.centralizer_in(A)
        return base.join(F.carrier)
    raise ValueError(rule)


def _check_against_realized(sub, ambient):
    """The extension rule and the conjugation shortcut must agree."""
    G = sub.host
    smask = sub.carrier.mask
    for P in sub.objects():
        pgens = P.generators()
        shortcut = set()
        for g in ambient.elems:
            if all(smask >> G.conj(g, x) & 1 for x in pgens):
                shortcut.add(conj_tuple(G, g, P))
        if shortcut != set(sub.maps(P)):
            raise InternalInconsistency(
                f"subsystem routes disagree on domain of order {P.order}")


# -- quotient systems ---------------------------------------------------------


@dataclass(frozen=True)
class QuotientSystemMap:
    """Translation data between F and F/Q."""

    source: FusionSystem
    quotient: FusionSystem
    s_local: object          # standalone copy of the base group used
    embed: tuple             # local index -> source-host index
    proj: object             # QuotientMap on the local group

    def push_subgroup(self, P):
        """Image of a source-host subgroup P (with Q <= P) in the quotient."""
        pos = {e: i for i, e in enumerate(self.embed)}
        qmask = mask_of(self.proj(pos[x]) for x in P.elems)
        return self.quotient.host.subgroup(qmask)

    def pull_subgroup(self, Pbar):
        members = [self.embed[x] for x in range(len(self.embed))
                   if Pbar.mask >> self.proj(x) & 1]
        return self.source.host.subgroup(mask_of(members))


def quotient_system(F, Q):
    """(F/Q on S/Q, translation map); requires Q normal in F."""
    ok, counter = is_normal_in_F(F, Q)
    if not ok:
        raise NotNormalInF(f"Q is not normal in F (counterexample {counter!r})")
    use_ambient = (F.ambient is not None and F._explicit is None
                   and Q.is_normal_in(F.ambient))
    base_sub = F.ambient if use_ambient else F.carrier
    local, embed = base_sub.as_group()
    pos = base_sub.pos_map()
    q_local = local.subgroup(mask_of(pos[x] for x in Q.elems))
    lquot, proj = quotient_group(local, q_local, name=f"{F.name}/Q")
    carrier_bar = lquot.subgroup(
        mask_of(proj(pos[x]) for x in F.carrier.elems))
    maps_by_domain = {}
    for P in F.objects():
        if not Q <= P:
            continue
        pbar_mask = mask_of(proj(pos[x]) for x in P.elems)
        Pbar = lquot.subgroup(pbar_mask)
        ppos = Pbar.pos_map()
        res = set()
        for t in F.maps(P):
            if mask_of(restrict_tuple(P, t, Q)) != Q.mask:
                raise InternalInconsistency(
                    "morphism does not stabilize the normal subgroup")
            images = [None] * Pbar.order
            for x, v in zip(P.elems, t):
                i = ppos[proj(pos[x])]
                w = proj(pos[v])
                if images[i] is None:
                    images[i] = w
                elif images[i] != w:
                    raise InternalInconsistency(
                        "projected morphism is not well defined")
            res.add(tuple(images))
        maps_by_domain[pbar_mask] = tuple(sorted(res))
    ambient_bar = lquot.full_subgroup if use_ambient else None
    qsys = FusionSystem.explicit_system(lquot, F.p, carrier_bar,
                                        maps_by_domain, ambient=ambient_bar,
                                        name=f"{F.name}/Q{Q.order}")
    if ambient_bar is not None:
        _check_against_realized(qsys, ambient_bar)
    return qsys, QuotientSystemMap(source=F, quotient=qsys, s_local=local,
                                   embed=embed, proj=proj)


# -- generated systems --------------------------------------------------------


def category_closure(host, p, carrier, seed_maps, ambient=None, name=None):
    """Smallest category on the carrier containing the seed morphisms and
    closed under composition, restriction, inversion of isomorphisms and
    inclusions (fixed-point iteration; finiteness bounds termination)."""
    objs = carrier.subgroups_within()
    by_mask = {P.mask: P for P in objs}
    maps = {P.mask: set() for P in objs}
    for P in objs:
        maps[P.mask].add(identity_tuple(P))
    for pmask, tuples in seed_maps.items():
        P = by_mask[pmask]
        for t in tuples:
            if not is_hom_tuple(host, P, t) or mask_of(t) & ~carrier.mask:
                raise CarrierMismatch("seed morphism is not an injective "
                                      "homomorphism into the carrier")
            maps[pmask].add(t)
    changed = True
    while changed:
        changed = False
        for P in objs:
            current = maps[P.mask]
            pending = {}
            for t in list(current):
                img, tinv = invert_tuple(host, P, t)
                if tinv not in maps[img.mask]:
                    pending.setdefault(img.mask, set()).add(tinv)
                for u in list(maps[img.mask]):
                    c = compose_tuples(t, img, u)
                    if c not in current:
                        pending.setdefault(P.mask, set()).add(c)
                for Qs in objs:
                    if Qs.mask != P.mask and Qs < P:
                        r = restrict_tuple(P, t, Qs)
                        if r not in maps[Qs.mask]:
                            pending.setdefault(Qs.mask, set()).add(r)
            for m, ts in pending.items():
                if ts - maps[m]:
                    maps[m] |= ts
                    changed = True
    final = {m: tuple(sorted(ts)) for m, ts in maps.items()}
    return FusionSystem.explicit_system(host, p, carrier, final,
                                        ambient=ambient,
                                        name=name or "generated")


def generated_system(parts):
    """<F_1, ..., F_k>: the category generated by the parts' morphisms."""
    if not parts:
        raise CarrierMismatch("need at least one part")
    first = parts[0]
    for F in parts[1:]:
        if (F.host is not first.host
                and F.host.table_hash() != first.host.table_hash()):
            raise CarrierMismatch("parts live in different host groups")
        if F.carrier.mask != first.carrier.mask or F.p != first.p:
            raise CarrierMismatch("parts are not carried on the same S")
    seed = {}
    for F in parts:
        for P in F.objects():
            seed.setdefault(P.mask, set()).update(F.maps(P))
    seed = {m: tuple(sorted(ts)) for m, ts in seed.items()}
    return category_closure(first.host, first.p, first.carrier, seed,
                            name=f"<{','.join(F.name for F in parts)}>")


# -- constrained models -------------------------------------------------------


@dataclass(frozen=True)
class Model:
    """The p'-reduced p-constrained model of N_F(Q) with its projection."""

    L: object                 # FiniteGroup
    F: FusionSystem
    Q: Subgroup
    normalizer: Subgroup      # N_ambient(Q)
    kernel: Subgroup          # O_p'(C_ambient(Q))
    embed: tuple              # local index of normalizer -> host index
    proj: object              # QuotientMap on the local normalizer copy

    def push_subgroup(self, P):
        """Image in L of a host subgroup P <= N_ambient(Q)."""
        pos = {e: i for i, e in enumerate(self.embed)}
        return self.L.subgroup(mask_of(self.proj(pos[x]) for x in P.elems))


def model_group(F, Q) -> Model:
    """L_Q = N_G(Q)/O_p'(C_G(Q)) with the contract post-conditions checked:
    O_p'(L) = 1, image of Q normal, image of N_S(Q) a Sylow p-subgroup and
    L / Z(Q)-image isomorphic to Aut_F(Q)."""
    if F.ambient is None:
        raise ModelValidationFailed(
            "model construction needs a conjugation source")
    prof = classify_subgroup(F, Q)
    if not prof.centric:
        raise NotCentric(f"subgroup of order {Q.order} is not centric")
    if not prof.fully_normalized:
        raise ModelValidationFailed("model requires a fully normalized Q")
    G = F.host
    p = F.p
    A = F.ambient
    N = Q.normalizer_in(A)
    C = Q.centralizer_in(A)
    Z = Q.center()
    # centric + fully normalized force C = Z(Q) x O_p'(C) (central Sylow)
    kmask = mask_of(x for x in C.elems if G.elem_orders[x] % p != 0)
    try:
        K = G.subgroup(kmask)
    except Exception as exc:
        raise ModelValidationFailed(
            f"p'-elements of C_G(Q) do not close: {exc}") from exc
    if Z.mask & K.mask != 1 or Z.order * K.order != C.order:
        raise ModelValidationFailed("C_G(Q) != Z(Q) x O_p'(C_G(Q))")
    local, embed = N.as_group()
    pos = N.pos_map()
    k_local = local.subgroup(mask_of(pos[x] for x in K.elems))
    L, proj = quotient_group(local, k_local, name=f"L({F.name},|Q|={Q.order})")
    model = Model(L=L, F=F, Q=Q, normalizer=N, kernel=K, embed=embed,
                  proj=proj)
    _validate_model(model, p)
    return model


def _validate_model(model, p):
    L = model.L
    F = model.F
    Q = model.Q
    if o_p_prime(L, p).order != 1:
        raise ModelValidationFailed("O_p'(L) is nontrivial")
    QL = model.push_subgroup(Q)
    if not QL.is_normal_in(L.full_subgroup):
        raise ModelValidationFailed("image of Q is not normal in L")
    NS = F.n_in_carrier(Q)
    SL = model.push_subgroup(NS)
    want = 1
    n = L.order
    while n % p == 0:
        want *= p
        n //= p
    if SL.order != want:
        raise ModelValidationFailed("image of N_S(Q) is not Sylow in L")
    ZL = model.push_subgroup(Q.center())
    Lbar, _ = quotient_group(L, ZL, name="L/Z(Q)")
    autg, _, _ = F.aut_group(Q)
    from .groups import is_isomorphic

    ok, _ = is_isomorphic(Lbar, autg)
    if not ok:
        raise ModelValidationFailed("L/Z(Q) is not isomorphic to Aut_F(Q)")


# -- chain straightening ------------------------------------------------------


def straighten_chain(F, chain):
    """A morphism on N_S(W_n) making every chain member fully normalized.

    The chain must satisfy: W_{i+1} characteristic in N_S(W_i) for i < n,
    and W_i fully normalized for i < n.  Returns (phi, image chain).
    """
    if not chain:
        raise ChainConditionViolated("empty chain")
    for W in chain:
        F.require_object(W)
    n = len(chain)
    for i in range(n - 1):
        ns = F.n_in_carrier(chain[i])
        if not chain[i + 1] <= ns:
            raise ChainConditionViolated(
                f"W_{i + 2} is not inside N_S(W_{i + 1})")
        if not is_characteristic(chain[i + 1], ns):
            raise ChainConditionViolated(
                f"W_{i + 2} is not characteristic in N_S(W_{i + 1})")
        if not F.is_fully_normalized(chain[i]):
            raise ChainConditionViolated(f"W_{i + 1} is not fully normalized")
    Wn = chain[-1]
    dom = F.n_in_carrier(Wn)
    ext = _well_placing_morphism(F, Wn)
    phi = wrap_tuple(F, dom, F.carrier, ext)
    images = []
    for i, W in enumerate(chain):
        img = F.host.subgroup(mask_of(phi(x) for x in W.elems))
        if not F.is_fully_normalized(img):
            raise InternalInconsistency(
                "straightened image is not fully normalized")
        # the normalizer carries over exactly when W was already fully
        # normalized (guaranteed for i < n; for W_n only if it happens to be)
        if i < n - 1 or F.is_fully_normalized(W):
            ns_img = mask_of(phi(x) for x in F.n_in_carrier(W).elems)
            if ns_img != F.n_in_carrier(img).mask:
                raise InternalInconsistency(
                    "phi(N_S(W)) != N_S(phi(W)) after straightening")
        images.append(img)
    return phi, tuple(images)


def _well_placing_morphism(F, Q):
    """A morphism on N_S(Q) sending Q to a fully normalized conjugate:
    pick such a conjugate, conjugate Aut_S(Q) into Aut_S of the image by
    Sylow conjugation inside Aut_F, then extend along N_phi."""
    host = F.host
    psi = None
    for t in F.maps(Q):
        if F.is_fully_normalized(host.subgroup(mask_of(t))):
            psi = t
            break
    assert psi is not None, "every class has a fully normalized member"
    img, psi_inv = invert_tuple(host, Q, psi)
    qpos = Q.pos_map()
    conj_auts = set()
    for x in F.n_in_carrier(Q).elems:
        conj_auts.add(tuple(psi[qpos[host.conj(x, u)]] for u in psi_inv))
    aut_s_img = set(F.aut_s_tuples(img))
    ipos = img.pos_map()
    tau = None
    for cand in F.aut_tuples(img):
        _, cand_inv = invert_tuple(host, img, cand)
        good = True
        for a in conj_auts:
            # cand o a o cand^{-1} on img
            m = tuple(cand[ipos[a[ipos[v]]]] for v in cand_inv)
            if m not in aut_s_img:
                good = False
                break
        if good:
            tau = cand
            break
    assert tau is not None, "Sylow conjugation inside Aut_F(img) must succeed"
    alpha = compose_tuples(psi, img, tau)
    from .fusion import _n_phi_tuple

    nphi = _n_phi_tuple(F, Q, alpha)
    dom = F.n_in_carrier(Q)
    assert nphi.mask == dom.mask, "N_alpha must be the full normalizer"
    for ext in F.maps(dom):
        if restrict_tuple(dom, ext, Q) == alpha:
            return ext
    raise InternalInconsistency("extension axiom failed on a verified system")
