"""Fusion systems on a finite p-group and their subgroup classification.

A system is carried by a subgroup S of a host group.  Realized systems
compute hom-sets lazily from a conjugation source (the ambient subgroup);
explicit systems store every hom-set.  Morphisms are held extensionally as
image tuples aligned with the sorted domain elements, so realized and
explicit systems share one code path everywhere downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    InternalInconsistency,
    MorphismNotInF,
    NotGenerated,
    NotSylow,
    ObjectOutsideS,
)
from .groups import (
    FiniteGroup,
    GroupMorphism,
    Subgroup,
    mask_of,
    o_p,
    sylow,
)

UNCHECKED = "unchecked"
VERIFIED = "verified"


# -- raw morphism helpers (image tuples over sorted domain elements) --------


def identity_tuple(P: Subgroup):
    return P.elems


def conj_tuple(G: FiniteGroup, g: int, P: Subgroup):
    mul = G._mul
    row = mul[g]
    gi = G.inv[g]
    return tuple(mul[row[x]][gi] for x in P.elems)


def restrict_tuple(P: Subgroup, t: tuple, Q: Subgroup):
    pos = P.pos_map()
    return tuple(t[pos[x]] for x in Q.elems)


def compose_tuples(t_inner: tuple, M: Subgroup, t_outer: tuple):
    """t_outer o t_inner, where image(t_inner) <= M = domain of t_outer."""
    pos = M.pos_map()
    return tuple(t_outer[pos[v]] for v in t_inner)


def invert_tuple(G: FiniteGroup, P: Subgroup, t: tuple):
    """(image subgroup, inverse tuple over the image's sorted elements)."""
    inv = {v: x for x, v in zip(P.elems, t)}
    img = G.subgroup(mask_of(t))
    return img, tuple(inv[v] for v in img.elems)


def is_hom_tuple(G: FiniteGroup, P: Subgroup, t: tuple):
    """Injective homomorphism test for a raw image tuple."""
    if len(set(t)) != len(t):
        return False
    pos = P.pos_map()
    mul = G._mul
    es = P.elems
    for i, x in enumerate(es):
        row = mul[x]
        ti = t[i]
        for j, y in enumerate(es):
            if t[pos[row[y]]] != mul[ti][t[j]]:
                return False
    return True


# -- the fusion system -------------------------------------------------------


class FusionSystem:
    """A category on the subgroups of a carrier S inside a host group."""

    def __init__(self, host, p, carrier, ambient=None, explicit=None,
                 name=None):
        if ambient is None and explicit is None:
            raise ValueError("a system needs an ambient subgroup or "
                             "explicit hom-sets")
        self.host = host
        self.p = p
        self.carrier = carrier
        self.ambient = ambient
        self._explicit = explicit
        self.saturation_status = UNCHECKED
        self.name = name or f"F_{carrier.order}({host.name})"
        if ambient is not None and not carrier <= ambient:
            raise ObjectOutsideS("carrier must sit inside the ambient subgroup")
        self._maps_cache = {} if explicit is None else dict(explicit)
        self._objects = None
        self._classes = None
        self._profiles = {}
        self._autgroup_cache = {}

    # -- constructors ---------------------------------------------------

    @classmethod
    def realized(cls, G, p, S, name=None):
        return cls(G, p, S, ambient=G.full_subgroup, name=name)

    @classmethod
    def inner(cls, S, p, name=None):
        """F_S(S): conjugation by S only."""
        return cls(S.parent, p, S, ambient=S,
                   name=name or f"F_S(S)|{S.parent.name}")

    @classmethod
    def explicit_system(cls, host, p, carrier, maps_by_domain, ambient=None,
                        name=None):
        full = dict(maps_by_domain)
        for P in carrier.subgroups_within():
            full.setdefault(P.mask, (identity_tuple(P),))
        return cls(host, p, carrier, ambient=ambient, explicit=full, name=name)

    def is_realized(self):
        return self.ambient is not None

    def __repr__(self):
        kind = "realized" if self.is_realized() else "explicit"
        return f"FusionSystem({self.name}, p={self.p}, {kind})"

    # -- objects and hom-sets --------------------------------------------

    def objects(self):
        if self._objects is None:
            self._objects = tuple(self.carrier.subgroups_within())
        return self._objects

    def require_object(self, P):
        if P.parent is not self.host or not P <= self.carrier:
            raise ObjectOutsideS(f"{P!r} is not a subgroup of the carrier")

    def maps(self, P):
        """All morphisms from P into the carrier, as sorted image tuples."""
        self.require_object(P)
        got = self._maps_cache.get(P.mask)
        if got is not None:
            return got
        if self._explicit is not None:
            raise ObjectOutsideS("explicit system lacks hom-sets for this "
                                 "domain; carrier mismatch?")
        out = set()
        G = self.host
        smask = self.carrier.mask
        pgens = P.generators()
        for g in self.ambient.elems:
            if all(smask >> G.conj(g, x) & 1 for x in pgens):
                out.add(conj_tuple(G, g, P))
        result = tuple(sorted(out))
        self._maps_cache[P.mask] = result
        return result

    def materialize(self):
        """Force every hom-set; returns {domain mask: tuple of image tuples}."""
        for P in self.objects():
            self.maps(P)
        return {P.mask: self._maps_cache[P.mask] for P in self.objects()}

    def has_morphism(self, P, t):
        return t in self.maps(P)

    # -- conjugacy, normalizers ------------------------------------------

    def n_in_carrier(self, Q):
        return Q.normalizer_in(self.carrier)

    def c_in_carrier(self, Q):
        return Q.centralizer_in(self.carrier)

    def conjugacy_classes(self):
        """Union-find over (domain, image) pairs of every stored morphism."""
        if self._classes is None:
            parent = {}

            def find(m):
                while parent[m] != m:
                    parent[m] = parent[parent[m]]
                    m = parent[m]
                return m

            def union(a, b):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)

            for P in self.objects():
                parent.setdefault(P.mask, P.mask)
                for t in self.maps(P):
                    m = mask_of(t)
                    parent.setdefault(m, m)
                    union(P.mask, m)
            classes = {}
            for m in parent:
                classes.setdefault(find(m), []).append(m)
            self._classes = {
                root: tuple(sorted(members, key=lambda m: (m.bit_count(), m)))
                for root, members in classes.items()}
            self._class_of = {m: root for root, members in
                              self._classes.items() for m in members}
        return self._classes

    def conjugacy_class_of(self, Q):
        self.require_object(Q)
        self.conjugacy_classes()
        root = self._class_of[Q.mask]
        return tuple(self.host.subgroup(m) for m in self._classes[root])

    def is_fully_normalized(self, Q):
        nq = self.n_in_carrier(Q).order
        return all(self.n_in_carrier(R).order <= nq
                   for R in self.conjugacy_class_of(Q))

    def is_fully_centralized(self, Q):
        cq = self.c_in_carrier(Q).order
        return all(self.c_in_carrier(R).order <= cq
                   for R in self.conjugacy_class_of(Q))

    # -- automorphism groups ----------------------------------------------

    def aut_tuples(self, Q):
        qmask = Q.mask
        return tuple(t for t in self.maps(Q) if mask_of(t) == qmask)

    def aut_s_tuples(self, Q):
        """Aut_S(Q): conjugation maps by carrier elements normalizing Q."""
        return tuple(sorted({conj_tuple(self.host, u, Q)
                             for u in self.n_in_carrier(Q).elems}))

    def inn_tuples(self, Q):
        return tuple(sorted({conj_tuple(self.host, q, Q) for q in Q.elems}))

    def aut_group(self, Q):
        """(FiniteGroup of Aut_F(Q), elements as image tuples, index map)."""
        got = self._autgroup_cache.get(Q.mask)
        if got is None:
            auts = self.aut_tuples(Q)
            got = _group_from_maps(Q, auts, name=f"AutF({Q.order})")
            self._autgroup_cache[Q.mask] = got
        return got

    def out_group(self, Q):
        """(Out_F(Q) group, projection, Aut_F(Q) data) for Q <= S."""
        autg, elems, index = self.aut_group(Q)
        inn = self.inn_tuples(Q)
        try:
            inn_mask = mask_of(index[t] for t in inn)
        except KeyError:
            raise MorphismNotInF("inner automorphisms missing from Aut_F(Q)")
        from .groups import quotient_group

        out, proj = quotient_group(autg, autg.subgroup(inn_mask),
                                   name=f"OutF({Q.order})")
        return out, proj, (autg, elems, index)


def _group_from_maps(Q, tuples, name):
    """Finite group from automorphism tuples under composition."""
    pos = Q.pos_map()
    index = {t: i for i, t in enumerate(tuples)}
    n = len(tuples)
    table = [[0] * n for _ in range(n)]
    for i, a in enumerate(tuples):
        for j, b in enumerate(tuples):
            # (a o b)(x) = a[b(x)]
            c = tuple(a[pos[v]] for v in b)
            if c not in index:
                raise MorphismNotInF(
                    "automorphism set is not composition-closed; the input "
                    "category violates the axioms")
            table[i][j] = index[c]
    ident = index[identity_tuple(Q)]
    if ident != 0:
        order_map = [ident] + [k for k in range(n) if k != ident]
        new_of_old = [0] * n
        for new, old in enumerate(order_map):
            new_of_old[old] = new
        table = [[new_of_old[table[a][b]] for b in order_map]
                 for a in order_map]
        tuples = tuple(tuples[k] for k in order_map)
        index = {t: i for i, t in enumerate(tuples)}
    g = FiniteGroup(table, name=name, validate=False)
    return g, tuples, index


# -- public operations -------------------------------------------------------


def realize_fusion(G, p, S=None, name=None):
    """F_S(G) for S a Sylow p-subgroup of G (found canonically if omitted)."""
    canonical = sylow(G, p)
    if S is None:
        S = canonical
    elif S.order != canonical.order:
        raise NotSylow(f"designated subgroup of order {S.order} does not "
                       f"have the full {p}-part {canonical.order}")
    return FusionSystem.realized(G, p, S, name=name)


def hom_set(F, P, R):
    """Hom_F(P,R) as GroupMorphism objects, canonically ordered."""
    F.require_object(P)
    F.require_object(R)
    rmask = R.mask
    out = []
    for t in F.maps(P):
        if mask_of(t) & ~rmask == 0:
            out.append(wrap_tuple(F, P, R, t))
    return out


def wrap_tuple(F, P, R, t):
    return GroupMorphism(P, R, dict(zip(P.elems, t)))


def morphism_tuple(F, phi: GroupMorphism):
    """The raw image tuple of a GroupMorphism, checked to belong to F."""
    P = phi.domain
    F.require_object(P)
    t = phi.as_tuple()
    if t not in F.maps(P):
        raise MorphismNotInF("morphism does not belong to the fusion system")
    return t


def n_phi(F, phi):
    """The extension-control subgroup N_phi for a morphism phi: Q -> S."""
    P = phi.domain if isinstance(phi, GroupMorphism) else phi[0]
    t = morphism_tuple(F, phi) if isinstance(phi, GroupMorphism) else phi[1]
    return _n_phi_tuple(F, P, t)


def _n_phi_tuple(F, P, t):
    G = F.host
    img, tinv = invert_tuple(G, P, t)
    nq = F.n_in_carrier(P)
    aut_s_img = set(F.aut_s_tuples(img))
    pos = P.pos_map()
    members = []
    for x in nq.elems:
        # phi o c_x o phi^{-1} must be conjugation by some y in N_S(phi Q)
        psi = tuple(t[pos[G.conj(x, u)]] for u in tinv)
        if psi in aut_s_img:
            members.append(x)
    m = mask_of(members)
    sub = G.subgroup(m)  # validates subgroup-ness
    floor = P.join(F.c_in_carrier(P))
    assert floor <= sub and sub <= nq, "Q C_S(Q) <= N_phi <= N_S(Q) violated"
    return sub


@dataclass(frozen=True)
class SubgroupProfile:
    """Classification of one subgroup inside a fusion system."""

    Q: Subgroup
    fully_normalized: bool
    fully_centralized: bool
    centric: bool
    radical: bool
    essential: bool
    witness: dict = field(default_factory=dict, compare=False)


def classify_subgroup(F, Q) -> SubgroupProfile:
    """Full profile; cross-checks the Sylow characterization of fully
    normalized subgroups and the essential => centric & radical implications."""
    F.require_object(Q)
    cached = F._profiles.get(Q.mask)
    if cached is not None:
        return cached
    witness = {}
    fn = F.is_fully_normalized(Q)
    fc = F.is_fully_centralized(Q)
    if not fn:
        best = max(F.conjugacy_class_of(Q),
                   key=lambda R: (F.n_in_carrier(R).order, -R.mask))
        witness["larger_normalizer_conjugate"] = best

    centric = all(F.c_in_carrier(R) <= R for R in F.conjugacy_class_of(Q))

    out, proj, (autg, elems, index) = F.out_group(Q)
    radical = o_p(out, F.p).order == 1

    spe = None
    if centric:
        spe = _strongly_p_embedded(out, F.p)
        if spe is not None:
            witness["strongly_p_embedded"] = spe
    essential = centric and spe is not None

    # Sylow characterization of fully normalized
    aut_s = set(F.aut_s_tuples(Q))
    if not aut_s <= set(elems):
        raise InternalInconsistency("Aut_S(Q) not inside Aut_F(Q)")
    aut_f_order = autg.order
    aut_s_order = len(aut_s)
    sylow_cond = _p_part(aut_f_order, F.p) == aut_s_order
    if fn != (fc and sylow_cond):
        raise InternalInconsistency(
            f"fully-normalized characterization failed on {Q!r}")
    if essential and not (centric and radical):
        raise InternalInconsistency("essential subgroup not centric+radical")

    profile = SubgroupProfile(Q=Q, fully_normalized=fn, fully_centralized=fc,
                              centric=centric, radical=radical,
                              essential=essential, witness=witness)
    F._profiles[Q.mask] = profile
    return profile


def _p_part(n, p):
    out = 1
    while n % p == 0:
        out *= p
        n //= p
    return out


def _strongly_p_embedded(out, p):
    """A proper subgroup M containing a Sylow p-subgroup P of ``out`` with
    P != phi(P) and phi(P) & P = 1 for every phi outside M, or None.

    A p'-group has a trivial Sylow (condition P != phi(P) fails) and a
    p-group has a normal one, so neither admits such a subgroup.
    """
    pp = _p_part(out.order, p)
    if pp == 1:
        return None
    subs = out.subgroups()
    sylows = [H for H in subs if H.order == pp]
    for M in subs:
        if M.order == out.order or M.order % pp != 0:
            continue
        for P in sylows:
            if not P <= M:
                continue
            good = True
            for phi in range(out.order):
                if phi in M:
                    continue
                cm = P.conjugate_mask(phi)
                if cm == P.mask or cm & P.mask != 1:
                    good = False
                    break
            if good:
                return (M, P)
    return None


def essential_subgroups(F):
    """(all essential subgroups, the fully normalized ones), canonical order."""
    ess = []
    ess_fn = []
    for Q in F.objects():
        prof = classify_subgroup(F, Q)
        if prof.essential:
            ess.append(Q)
            if prof.fully_normalized:
                ess_fn.append(Q)
    return ess, ess_fn


# -- axiom verification ------------------------------------------------------


@dataclass(frozen=True)
class AxiomReport:
    status: str                # "verified" or "failed"
    witness: tuple = None      # (axiom, detail...) for failures

    def __bool__(self):
        return self.status == VERIFIED


def verify_axioms(F) -> AxiomReport:
    """Exhaustively check the category axioms plus the three fusion-system
    axioms; records the first failure as a witness."""
    host = F.host
    carrier = F.carrier
    report = _verify(F, host, carrier)
    F.saturation_status = report.status if report else ("failed", report.witness)
    return report


def _verify(F, host, carrier):
    objs = F.objects()
    maps_of = {P.mask: F.maps(P) for P in objs}
    sub_of = {P.mask: P for P in objs}

    # morphisms are injective homomorphisms into the carrier
    for P in objs:
        for t in maps_of[P.mask]:
            if mask_of(t) & ~carrier.mask:
                return AxiomReport("failed", ("image-outside-S", P, t))
            if not is_hom_tuple(host, P, t):
                return AxiomReport("failed", ("not-injective-hom", P, t))

    # category axioms: inclusions, inverses of induced isos, composition
    for P in objs:
        ms = set(maps_of[P.mask])
        if identity_tuple(P) not in ms:
            return AxiomReport("failed", ("missing-inclusion", P))
        for t in ms:
            img, tinv = invert_tuple(host, P, t)
            if tinv not in set(maps_of[img.mask]):
                return AxiomReport("failed", ("missing-inverse", P, t))
            for u in maps_of[img.mask]:
                if compose_tuples(t, img, u) not in ms:
                    return AxiomReport("failed", ("not-composition-closed",
                                                  P, t, u))
            for Q in objs:
                if Q < P and restrict_tuple(P, t, Q) not in set(maps_of[Q.mask]):
                    return AxiomReport("failed", ("not-restriction-closed",
                                                  P, t, Q))

    # FS1: all S-conjugation maps present
    for P in objs:
        ms = set(maps_of[P.mask])
        for u in carrier.elems:
            cu = conj_tuple(host, u, P)
            if mask_of(cu) & ~carrier.mask == 0 and cu not in ms:
                return AxiomReport("failed", ("FS1", P, u))

    # FS2: Aut_S(S) is a Sylow p-subgroup of Aut_F(S)
    aut_f_s = F.aut_tuples(carrier)
    aut_s_s = set(F.aut_s_tuples(carrier))
    if not aut_s_s <= set(aut_f_s):
        return AxiomReport("failed", ("FS2", "Aut_S(S) not contained"))
    if _p_part(len(aut_f_s), F.p) != len(aut_s_s):
        return AxiomReport("failed", ("FS2", len(aut_f_s), len(aut_s_s)))

    # FS3: morphisms with fully normalized image extend to N_phi
    for P in objs:
        for t in maps_of[P.mask]:
            img = host.subgroup(mask_of(t))
            if not F.is_fully_normalized(img):
                continue
            try:
                nphi = _n_phi_tuple(F, P, t)
            except AssertionError:
                return AxiomReport("failed", ("FS3-nphi", P, t))
            if nphi.mask == P.mask:
                continue
            ext_found = any(restrict_tuple(nphi, ext, P) == t
                            for ext in maps_of[nphi.mask])
            if not ext_found:
                return AxiomReport("failed", ("FS3", P, t, nphi))

    return AxiomReport(VERIFIED)


# -- Alperin decomposition ----------------------------------------------------


@dataclass(frozen=True)
class AlperinDecomposition:
    """phi written as restrictions of essential automorphisms followed by
    the restriction of one maximal automorphism.

    ``subgroup_chain`` is Q_0, ..., Q_{n+1}; ``essentials`` E_1..E_n carry
    ``automorphisms`` psi_1..psi_n, and the final entry of ``automorphisms``
    is the maximal automorphism psi_{n+1} on S.
    """

    source: GroupMorphism
    subgroup_chain: tuple
    essentials: tuple
    automorphisms: tuple

    @property
    def n_steps(self):
        return len(self.essentials)

    def recompose(self):
        """Apply the chain to every domain element; must reproduce source."""
        q0 = self.subgroup_chain[0]
        images = list(q0.elems)
        for k, psi in enumerate(self.automorphisms):
            dom = psi.domain
            images = [psi(x) for x in images]
            target = self.subgroup_chain[k + 1]
            assert mask_of(images) == target.mask
        return dict(zip(q0.elems, images))


def alperin_decompose(F, phi) -> AlperinDecomposition:
    """BFS over restrictions of fully normalized essential automorphisms;
    the reported step count is the minimum the search found."""
    P = phi.domain
    t_goal = morphism_tuple(F, phi)
    host = F.host
    _, ess_fn = essential_subgroups(F)
    ess_auts = [(E, F.aut_tuples(E)) for E in ess_fn]
    s_auts = F.aut_tuples(F.carrier)
    carrier = F.carrier

    start = identity_tuple(P)
    seen = {start: None}  # tuple -> (prev tuple, E, aut tuple) or None
    queue = [start]
    while queue:
        nxt = []
        for cur in queue:
            final = _maximal_finish(host, carrier, P, cur, t_goal, s_auts)
            if final is not None:
                return _build_decomposition(F, phi, P, cur, seen, final)
            cur_mask = mask_of(cur)
            for E, auts in ess_auts:
                if cur_mask & ~E.mask:
                    continue
                pos = E.pos_map()
                for a in auts:
                    new = tuple(a[pos[v]] for v in cur)
                    if new not in seen:
                        seen[new] = (cur, E, a)
                        nxt.append(new)
        queue = nxt
    raise NotGenerated("morphism is not generated by essential and maximal "
                       "automorphisms; the input category is not a fusion "
                       "system")


def _maximal_finish(host, carrier, P, cur, t_goal, s_auts):
    """An Aut_F(S) element finishing cur into t_goal, if one exists."""
    pos = carrier.pos_map()
    for a in s_auts:
        if all(a[pos[v]] == w for v, w in zip(cur, t_goal)):
            return a
    return None


def _build_decomposition(F, phi, P, cur, seen, final):
    host = F.host
    steps = []
    state = cur
    while seen[state] is not None:
        prev, E, a = seen[state]
        steps.append((prev, E, a))
        state = prev
    steps.reverse()
    chain = [P]
    essentials = []
    autos = []
    running = identity_tuple(P)
    for prev, E, a in steps:
        pos = E.pos_map()
        running = tuple(a[pos[v]] for v in running)
        chain.append(host.subgroup(mask_of(running)))
        essentials.append(E)
        autos.append(wrap_tuple(F, E, E, a))
    carrier = F.carrier
    pos = carrier.pos_map()
    running = tuple(final[pos[v]] for v in running)
    chain.append(host.subgroup(mask_of(running)))
    autos.append(wrap_tuple(F, carrier, carrier, final))
    deco = AlperinDecomposition(source=phi, subgroup_chain=tuple(chain),
                                essentials=tuple(essentials),
                                automorphisms=tuple(autos))
    got = deco.recompose()
    want = dict(zip(P.elems, morphism_tuple(F, phi)))
    assert got == want, "recomposition failed to reproduce the morphism"
    return deco


def fusion_equal(F1, F2):
    """Hom-set equality on all subgroup pairs (same host table, same carrier)."""
    if F1.host is not F2.host:
        if F1.host.table_hash() != F2.host.table_hash():
            return False
    if F1.carrier.mask != F2.carrier.mask:
        return False
    for P in F1.objects():
        P2 = F2.host.subgroup(P.mask)
        if set(F1.maps(P)) != set(F2.maps(P2)):
            return False
    return True
