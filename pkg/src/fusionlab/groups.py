"""Finite-group engine on Cayley tables.

Groups are immutable objects indexed 0..order-1 with element 0 the identity.
Subgroups are bit-vectors (Python ints) over the parent's element indices,
so subset tests, intersections and deduplication stay cheap at desk scale
(orders up to the configured cap, default 1000).
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

from .errors import (
    InvalidPermutation,
    NonAssociative,
    NotAPGroup,
    NotASubgroup,
    NotNormal,
    OrderCapExceeded,
)

DEFAULT_ORDER_CAP = 1000
DEFAULT_AUT_CAP = 256
MAX_PERM_POINTS = 64

_ASSOC_SAMPLE = 10_000


def bits(mask):
    """Yield the set bit positions of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices):
    m = 0
    for i in indices:
        m |= 1 << i
    return m


class FiniteGroup:
    """A finite group given by its multiplication table.

    ``mul_row[a][b]`` is the index of the product a*b.  Construction checks
    the identity/inverse laws on the whole table and associativity
    exhaustively up to order 64 (randomly, >= 10^4 triples, above that).
    """

    def __init__(self, mul_row, name="G", perm_rep=None, gen_indices=None,
                 perm_elements=None, validate=True):
        self._mul = [list(row) for row in mul_row]
        self.order = len(self._mul)
        self.name = name
        # perm_rep: the generator permutations; perm_elements: every element
        # as a permutation, aligned with the group indexing (when known)
        self.perm_rep = None if perm_rep is None else [tuple(p) for p in perm_rep]
        self.gen_indices = None if gen_indices is None else tuple(gen_indices)
        self.perm_elements = (None if perm_elements is None
                              else [tuple(p) for p in perm_elements])
        if validate:
            self._validate_table()
        self.inv = self._compute_inverses()
        self.elem_orders = self._compute_orders()
        self._subgroup_cache = {}
        self._lattice = None
        self._generators = None
        self._factorization = None
        self._auts_raw = None
        self._hash = None

    # -- construction-time checks -------------------------------------

    def _validate_table(self):
        n = self.order
        if n == 0:
            raise NonAssociative("empty multiplication table")
        for i, row in enumerate(self._mul):
            if len(row) != n:
                raise NonAssociative(f"row {i} has length {len(row)}, expected {n}")
            for v in row:
                if not 0 <= v < n:
                    raise NonAssociative(f"entry {v} out of range in row {i}")
        mul = self._mul
        for x in range(n):
            if mul[0][x] != x or mul[x][0] != x:
                raise NonAssociative("element 0 is not a two-sided identity")
        for x in range(n):
            if not any(mul[x][y] == 0 and mul[y][x] == 0 for y in range(n)):
                raise NonAssociative(f"element {x} has no two-sided inverse")
        if n <= 64:
            for a in range(n):
                ra = mul[a]
                for b in range(n):
                    rb = mul[b]
                    ab = ra[b]
                    rab = mul[ab]
                    for c in range(n):
                        if rab[c] != ra[rb[c]]:
                            raise NonAssociative(
                                f"({a}*{b})*{c} != {a}*({b}*{c})")
        else:
            rng = random.Random(0xA55)
            for _ in range(_ASSOC_SAMPLE):
                a = rng.randrange(n)
                b = rng.randrange(n)
                c = rng.randrange(n)
                if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                    raise NonAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})")

    def _compute_inverses(self):
        mul = self._mul
        n = self.order
        inv = [0] * n
        for x in range(n):
            for y in range(n):
                if mul[x][y] == 0:
                    inv[x] = y
                    break
        return inv

    def _compute_orders(self):
        orders = [1] * self.order
        mul = self._mul
        for x in range(1, self.order):
            k, y = 1, x
            while y != 0:
                y = mul[y][x]
                k += 1
            orders[x] = k
        return orders

    # -- basic operations ----------------------------------------------

    def mul(self, a, b):
        return self._mul[a][b]

    def mul_row(self, a):
        return self._mul[a]

    def conj(self, g, x):
        """g x g^-1 (left conjugation)."""
        return self._mul[self._mul[g][x]][self.inv[g]]

    def power(self, x, k):
        k %= self.elem_orders[x]
        y = 0
        for _ in range(k):
            y = self._mul[y][x]
        return y

    def commutator(self, x, y):
        m = self._mul
        return m[m[m[x][y]][self.inv[x]]][self.inv[y]]

    def is_abelian(self):
        m = self._mul
        return all(m[a][b] == m[b][a]
                   for a in range(self.order) for b in range(a + 1, self.order))

    @property
    def full_mask(self):
        return (1 << self.order) - 1

    def table_hash(self):
        """Content hash of the Cayley table (cache key; relabel-sensitive)."""
        if self._hash is None:
            h = hashlib.sha256()
            for row in self._mul:
                h.update(b"|")
                h.update(",".join(map(str, row)).encode())
            self._hash = h.hexdigest()
        return self._hash

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"

    # -- subgroups -------------------------------------------------------

    def subgroup(self, mask):
        sub = self._subgroup_cache.get(mask)
        if sub is None:
            sub = Subgroup(self, mask)
            self._subgroup_cache[mask] = sub
        return sub

    def subgroup_of(self, elements):
        return self.subgroup(mask_of(elements))

    @property
    def trivial_subgroup(self):
        return self.subgroup(1)

    @property
    def full_subgroup(self):
        return self.subgroup(self.full_mask)

    def cyclic_mask(self, x):
        mul = self._mul
        m = 1
        y = x
        while y != 0:
            m |= 1 << y
            y = mul[y][x]
        return m

    def closure_mask(self, generators, seed_mask=1):
        """Mask of the subgroup generated by ``generators`` over a known
        subgroup ``seed_mask``.  The generator list must generate the seed
        subgroup too (pass the seed's generators along); new elements are
        explored on both sides, which reaches every mixed word."""
        mul = self._mul
        mask = seed_mask
        frontier = []
        gens = []
        for g in generators:
            gens.append(g)
            if not mask >> g & 1:
                mask |= 1 << g
                frontier.append(g)
        while frontier:
            nxt = []
            for f in frontier:
                rowf = mul[f]
                for g in gens:
                    for z in (rowf[g], mul[g][f]):
                        if not mask >> z & 1:
                            mask |= 1 << z
                            nxt.append(z)
            frontier = nxt
        return mask

    def generators(self):
        """A small deterministic generating sequence (greedy closure)."""
        if self._generators is None:
            gens = []
            mask = 1
            while mask != self.full_mask:
                for x in range(1, self.order):
                    if not mask >> x & 1:
                        gens.append(x)
                        mask = self.closure_mask(gens, mask)
                        break
            self._generators = tuple(gens)
        return self._generators

    def factorization(self):
        """(element, parent, generator) triples in BFS order wrt
        ``generators()``; element = parent*gen, parents always resolved
        first.  Used to push generator images through candidate maps."""
        if self._factorization is None:
            gens = self.generators()
            seen = [False] * self.order
            seen[0] = True
            fact = []
            frontier = [0]
            while frontier:
                nxt = []
                for x in frontier:
                    for g in gens:
                        y = self._mul[x][g]
                        if not seen[y]:
                            seen[y] = True
                            fact.append((y, x, g))
                            nxt.append(y)
                frontier = nxt
            self._factorization = tuple(fact)
        return self._factorization

    def subgroups(self, cap=DEFAULT_ORDER_CAP):
        """All subgroups, canonically ordered (size, then bit-vector)."""
        if self.order > cap:
            raise OrderCapExceeded(
                f"group order {self.order} exceeds lattice cap {cap}")
        if self._lattice is None:
            self._lattice = _subgroup_lattice_masks(self)
        return [self.subgroup(m) for m in self._lattice]


class Subgroup:
    """A subgroup of a fixed parent group, stored as a membership bit-vector.

    Instances are interned per (parent, mask); closure under product and
    inverse plus Lagrange are checked on first construction.
    """

    __slots__ = ("parent", "mask", "_elems", "_pos", "_gens", "_as_group")

    def __init__(self, parent, mask):
        self.parent = parent
        self.mask = mask
        self._elems = tuple(bits(mask))
        self._pos = None
        self._gens = None
        self._as_group = None
        if not mask & 1:
            raise NotASubgroup("subgroup must contain the identity")
        mul = parent._mul
        inv = parent.inv
        for x in self._elems:
            if not mask >> inv[x] & 1:
                raise NotASubgroup(f"not closed under inverse at {x}")
            row = mul[x]
            for y in self._elems:
                if not mask >> row[y] & 1:
                    raise NotASubgroup(f"not closed under product at ({x},{y})")
        if parent.order % len(self._elems) != 0:
            raise NotASubgroup("order does not divide parent order")

    @property
    def order(self):
        return len(self._elems)

    @property
    def elems(self):
        return self._elems

    def pos(self, x):
        """Index of element x inside the sorted element tuple."""
        if self._pos is None:
            self._pos = {e: i for i, e in enumerate(self._elems)}
        return self._pos[x]

    def pos_map(self):
        if self._pos is None:
            self._pos = {e: i for i, e in enumerate(self._elems)}
        return self._pos

    def __contains__(self, x):
        return bool(self.mask >> x & 1)

    def __le__(self, other):
        return self.mask & ~other.mask == 0

    def __lt__(self, other):
        return self.mask != other.mask and self.mask & ~other.mask == 0

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and other.mask == self.mask)

    def __hash__(self):
        return hash((id(self.parent), self.mask))

    def __repr__(self):
        return f"Subgroup(order={self.order}, of={self.parent.name})"

    def key(self):
        """Canonical sort key: size, then bit-vector."""
        return (self.order, self.mask)

    def generators(self):
        if self._gens is None:
            G = self.parent
            gens = []
            mask = 1
            for x in self._elems:
                if not mask >> x & 1:
                    gens.append(x)
                    mask = G.closure_mask(gens, mask)
                    if mask == self.mask:
                        break
            self._gens = tuple(gens)
        return self._gens

    def is_abelian(self):
        m = self.parent._mul
        es = self._elems
        return all(m[a][b] == m[b][a] for i, a in enumerate(es) for b in es[i + 1:])

    def conjugate_mask(self, g):
        G = self.parent
        mul = G._mul
        gi = G.inv[g]
        row = mul[g]
        return mask_of(mul[row[x]][gi] for x in self._elems)

    def conjugate(self, g):
        return self.parent.subgroup(self.conjugate_mask(g))

    def is_normal_in(self, other):
        """True if ``other`` (Subgroup) normalizes self elementwise."""
        return all(self.conjugate_mask(g) == self.mask for g in other.generators())

    def normalizer_in(self, other):
        """{x in other : x self x^-1 = self} as a Subgroup."""
        m = mask_of(x for x in other.elems if self.conjugate_mask(x) == self.mask)
        return self.parent.subgroup(m)

    def centralizer_in(self, other):
        G = self.parent
        mul = G._mul
        es = self._elems
        m = mask_of(x for x in other.elems
                    if all(mul[x][y] == mul[y][x] for y in es))
        return G.subgroup(m)

    def center(self):
        return self.centralizer_in(self)

    def join(self, other):
        """Subgroup generated by self and other."""
        gens = list(self.generators()) + list(other.generators())
        return self.parent.subgroup(self.parent.closure_mask(gens, self.mask))

    def meet(self, other):
        return self.parent.subgroup(self.mask & other.mask)

    def subgroups_within(self):
        """All subgroups contained in self, canonically ordered.

        Uses the parent lattice when it is already cached, otherwise works
        on the standalone copy of self (cheaper when the parent is large).
        """
        G = self.parent
        if self.mask == G.full_mask or G._lattice is not None:
            return [H for H in G.subgroups() if H.mask & ~self.mask == 0]
        sub, embed = self.as_group()
        return [G.subgroup(mask_of(embed[e] for e in H.elems))
                for H in sub.subgroups()]

    def as_group(self):
        """(standalone FiniteGroup, embed) with embed[i] the parent index."""
        if self._as_group is None:
            G = self.parent
            es = self._elems
            pos = self.pos_map()
            table = [[pos[G._mul[a][b]] for b in es] for a in es]
            sub = FiniteGroup(table, name=f"{G.name}|sub{self.order}",
                              validate=False)
            self._as_group = (sub, es)
        return self._as_group

    def element_orders(self):
        return sorted(self.parent.elem_orders[x] for x in self._elems)


@dataclass(frozen=True)
class GroupMorphism:
    """An injective homomorphism between subgroups, as an image table.

    ``images`` maps each domain member (parent index of the domain's group)
    to a codomain member (parent index of the codomain's group).  The maps
    are validated as injective homomorphisms on construction.
    """

    domain: Subgroup
    codomain: Subgroup
    images: dict

    def __post_init__(self):
        dom, cod = self.domain, self.codomain
        imgs = self.images
        if set(imgs) != set(dom.elems):
            raise NotASubgroup("image table keys must equal the domain")
        vals = set(imgs.values())
        if len(vals) != len(imgs):
            raise NotASubgroup("morphism is not injective")
        if any(v not in cod for v in vals):
            raise NotASubgroup("image escapes the codomain")
        gm, hm = dom.parent._mul, cod.parent._mul
        for x in dom.elems:
            for y in dom.elems:
                if imgs[gm[x][y]] != hm[imgs[x]][imgs[y]]:
                    raise NotASubgroup("image table is not multiplicative")

    def __call__(self, x):
        return self.images[x]

    def image_mask(self):
        return mask_of(self.images.values())

    def image(self):
        return self.codomain.parent.subgroup(self.image_mask())

    def is_bijective(self):
        return self.domain.order == self.codomain.order == len(self.images)

    def restrict(self, sub):
        """Restriction to a subgroup of the domain."""
        if not sub <= self.domain:
            raise NotASubgroup("restriction target is not inside the domain")
        return GroupMorphism(sub, self.codomain,
                             {x: self.images[x] for x in sub.elems})

    def as_tuple(self):
        """Images aligned with the sorted domain elements."""
        return tuple(self.images[x] for x in self.domain.elems)

    def __repr__(self):
        return (f"GroupMorphism({self.domain.order}->{self.codomain.order}, "
                f"{self.as_tuple()})")


# -- construction -------------------------------------------------------


def identity_perm(n):
    return tuple(range(n))


def compose_perms(a, b):
    """(a*b)(x) = a(b(x)); the product convention for permutation groups."""
    return tuple(a[b[i]] for i in range(len(a)))


def build_group(spec, name="G", cap=DEFAULT_ORDER_CAP, kind="auto"):
    """Build a validated FiniteGroup.

    ``spec`` is either a list of permutations (tuples of 0-based images, all
    on the same number of points <= 64) closed breadth-first in input order,
    or a full square Cayley table.  A square list is read as a table unless
    ``kind="perms"`` forces the permutation reading; element 0 is always the
    identity (tables with the identity elsewhere are relabelled).
    """
    if kind == "table":
        return _group_from_table(spec, name, cap)
    if kind == "perms":
        return _group_from_perms(spec, name, cap)
    if spec and isinstance(spec[0], (list, tuple)) and len(spec) == len(spec[0]):
        return _group_from_table(spec, name, cap)
    return _group_from_perms(spec, name, cap)


def _group_from_perms(perms, name, cap):
    degree = None
    gens = []
    for p in perms:
        p = tuple(p)
        if degree is None:
            degree = len(p)
            if degree > MAX_PERM_POINTS:
                raise InvalidPermutation(
                    f"permutations act on {degree} > {MAX_PERM_POINTS} points")
        if len(p) != degree:
            raise InvalidPermutation("generators act on different point sets")
        if sorted(p) != list(range(degree)):
            raise InvalidPermutation(f"not a permutation: {p}")
        gens.append(p)
    if degree is None:
        degree = 1
    ident = identity_perm(degree)
    elements = [ident]
    index = {ident: 0}
    queue = [ident]
    while queue:
        nxt = []
        for x in queue:
            for g in gens:
                y = compose_perms(x, g)
                if y not in index:
                    if len(elements) >= cap:
                        raise OrderCapExceeded(
                            f"closure exceeded order cap {cap}")
                    index[y] = len(elements)
                    elements.append(y)
                    nxt.append(y)
        queue = nxt
    n = len(elements)
    table = [[index[compose_perms(a, b)] for b in elements] for a in elements]
    gen_indices = tuple(index[g] for g in gens)
    return FiniteGroup(table, name=name, perm_rep=gens,
                       gen_indices=gen_indices, perm_elements=elements)


def _group_from_table(table, name, cap):
    n = len(table)
    if n > cap:
        raise OrderCapExceeded(f"table order {n} exceeds cap {cap}")
    rows = [list(r) for r in table]
    for i, row in enumerate(rows):
        if len(row) != n:
            raise NonAssociative(f"row {i} is not of length {n}")
    ident = None
    for e in range(n):
        if all(rows[e][x] == x and rows[x][e] == x for x in range(n)):
            ident = e
            break
    if ident is None:
        raise NonAssociative("table has no two-sided identity")
    if ident != 0:
        # deterministic relabel: identity to 0, all other indices stable
        old_of_new = [ident] + [x for x in range(n) if x != ident]
        new_of_old = [0] * n
        for new, old in enumerate(old_of_new):
            new_of_old[old] = new
        rows = [[new_of_old[rows[a][b]] for b in old_of_new] for a in old_of_new]
    return FiniteGroup(rows, name=name)


def group_from_function(elements, op, name="G"):
    """Cayley table from abstract elements and a multiplication callable."""
    index = {e: i for i, e in enumerate(elements)}
    table = [[index[op(a, b)] for b in elements] for a in elements]
    return _group_from_table(table, name, cap=max(len(elements), 1))


def regular_generators(G, gen_idx=None):
    """Left-regular permutation generators for G (on G.order points)."""
    if gen_idx is None:
        gen_idx = G.generators()
    return [tuple(G.mul(g, x) for x in range(G.order)) for g in gen_idx]


# -- subgroup lattice ----------------------------------------------------


def _prime_power_indices(G):
    out = []
    for x in range(1, G.order):
        k = G.elem_orders[x]
        p = _smallest_prime_factor(k)
        while k % p == 0:
            k //= p
        if k == 1:
            out.append(x)
    return out


def _smallest_prime_factor(n):
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def _subgroup_lattice_masks(G):
    """Every subgroup mask, found by adjoining prime-power-order elements
    to known subgroups; complete because every subgroup is reached along a
    chain that adds one prime-power generator at a time."""
    n = G.order
    mul = G._mul
    pp_elems = _prime_power_indices(G)
    found = {1: ()}
    frontier = [1]
    for x in range(1, n):
        m = G.cyclic_mask(x)
        if m not in found:
            found[m] = (x,)
            frontier.append(m)
    while frontier:
        fresh = []
        for hmask in frontier:
            hgens = found[hmask]
            helems = tuple(bits(hmask))
            covered = hmask
            for x in pp_elems:
                if covered >> x & 1:
                    continue
                kmask = G.closure_mask(hgens + (x,), hmask)
                if kmask not in found:
                    found[kmask] = hgens + (x,)
                    fresh.append(kmask)
                # skip the whole double coset H x H: same generated subgroup
                for h1 in helems:
                    t = mul[h1][x]
                    row = mul[t]
                    for h2 in helems:
                        covered |= 1 << row[h2]
        frontier = fresh
    masks = sorted(found, key=lambda m: (m.bit_count(), m))
    for m, gens in found.items():
        sub = G.subgroup(m)
        if sub._gens is None:
            sub._gens = gens
    return masks


def subgroup_lattice(G, cap=DEFAULT_ORDER_CAP):
    """All subgroups of G exactly once, canonically ordered."""
    return G.subgroups(cap=cap)


# -- standard subgroups ----------------------------------------------------


def sylow(G, p, cap=DEFAULT_ORDER_CAP):
    """The canonical Sylow p-subgroup (least bit-vector among conjugates)."""
    if G.order > cap:
        raise OrderCapExceeded(f"order {G.order} exceeds cap {cap}")
    target = 1
    n = G.order
    while (G.order // target) % p == 0:
        target *= p
    pmask = 1
    psub = G.subgroup(1)
    while psub.order < target:
        nmask = psub.normalizer_in(G.full_subgroup)
        grown = False
        for x in nmask.elems:
            if x in psub:
                continue
            k = G.elem_orders[x]
            while k % p == 0:
                k //= p
            if k == 1:
                gens = list(psub.generators()) + [x]
                psub = G.subgroup(G.closure_mask(gens, psub.mask))
                grown = True
                break
        if not grown:  # cannot happen for a true group
            raise NonAssociative("Sylow growth stalled")
    best = min(psub.conjugate_mask(g) for g in range(n))
    return G.subgroup(best)


def omega_mask(G, sub_mask, p):
    """<x : x^p = 1> inside the given subgroup mask."""
    gens = [x for x in bits(sub_mask) if G.elem_orders[x] == p]
    return G.closure_mask(gens, 1)


def standard_subgroup(G, kind, q=None, within=None, p=None):
    """Named subgroups: center, centralizer/normalizer of q, derived,
    O_p, O_p', omega1 (all computed inside ``within``, default G)."""
    W = within if within is not None else G.full_subgroup
    if q is not None and not q <= W:
        raise NotASubgroup("q is not contained in the ambient subgroup")
    if kind == "center":
        return W.center()
    if kind == "centralizer":
        return q.centralizer_in(W)
    if kind == "normalizer":
        return q.normalizer_in(W)
    if kind == "derived":
        comms = set()
        es = W.elems
        for x in es:
            for y in es:
                comms.add(G.commutator(x, y))
        return G.subgroup(G.closure_mask(sorted(comms), 1))
    if kind == "O_p":
        return o_p(G, p, within=W)
    if kind == "O_p'":
        return o_p_prime(G, p, within=W)
    if kind == "omega1":
        target = W if q is None else q
        if not _is_p_group_order(target.order, p):
            raise NotAPGroup(f"omega1 target of order {target.order} is "
                             f"not a {p}-group")
        return G.subgroup(omega_mask(G, target.mask, p))
    raise ValueError(f"unknown standard subgroup kind {kind!r}")


def _is_p_group_order(n, p):
    while n % p == 0:
        n //= p
    return n == 1


def o_p(G, p, within=None):
    """Largest normal p-subgroup of ``within`` (default G): Sylow core."""
    W = within if within is not None else G.full_subgroup
    if W.order % p != 0:
        return G.trivial_subgroup
    if W.mask == G.full_mask:
        P = sylow(G, p)
        members = range(G.order)
    else:
        sub, embed = W.as_group()
        Ploc = sylow(sub, p)
        P = G.subgroup(mask_of(embed[e] for e in Ploc.elems))
        members = W.elems
    core = P.mask
    for g in members:
        core &= P.conjugate_mask(g)
        if core == 1:
            break
    return G.subgroup(core)


def o_p_prime(G, p, within=None):
    """Largest normal subgroup of order coprime to p (join of all such)."""
    W = within if within is not None else G.full_subgroup
    gens = W.generators()
    join = G.subgroup(1)
    for H in W.subgroups_within():
        if H.order % p == 0 or H.order == 1:
            continue
        if not H <= join and all(H.conjugate_mask(g) == H.mask for g in gens):
            join = join.join(H)
    # join of normal p'-subgroups is a normal p'-subgroup
    assert join.order % p != 0 or join.order == 1
    return join


# -- quotients ---------------------------------------------------------------


@dataclass(frozen=True)
class QuotientMap:
    """Surjective projection G -> G/N as a per-element coset index table."""

    source: FiniteGroup
    quotient: FiniteGroup
    coset_of: tuple
    reps: tuple

    def __call__(self, x):
        return self.coset_of[x]

    def push_mask(self, mask):
        return mask_of(self.coset_of[x] for x in bits(mask))

    def push_subgroup(self, sub):
        return self.quotient.subgroup(self.push_mask(sub.mask))

    def pull_mask(self, qmask):
        return mask_of(x for x in range(self.source.order)
                       if qmask >> self.coset_of[x] & 1)

    def pull_subgroup(self, qsub):
        return self.source.subgroup(self.pull_mask(qsub.mask))

    def kernel_mask(self):
        return mask_of(x for x in range(self.source.order)
                       if self.coset_of[x] == 0)


def quotient_group(G, N, name=None):
    """(G/N, projection); cosets indexed by least member, identity first."""
    if not N.is_normal_in(G.full_subgroup):
        raise NotNormal("quotient by a non-normal subgroup")
    n = G.order
    mul = G._mul
    coset_of = [-1] * n
    reps = []
    for x in range(n):
        if coset_of[x] < 0:
            idx = len(reps)
            reps.append(x)
            for h in N.elems:
                coset_of[mul[x][h]] = idx
    k = len(reps)
    table = [[coset_of[mul[reps[a]][reps[b]]] for b in range(k)]
             for a in range(k)]
    name = name or f"{G.name}/{N.order}"
    Q = FiniteGroup(table, name=name, validate=False)
    proj = QuotientMap(G, Q, tuple(coset_of), tuple(reps))
    _check_projection(G, N, proj)
    return Q, proj


def _check_projection(G, N, proj):
    # surjective homomorphism with kernel exactly N
    mul, qmul = G._mul, proj.quotient._mul
    co = proj.coset_of
    gens = G.generators()
    for x in range(G.order):
        for g in gens:
            if co[mul[x][g]] != qmul[co[x]][co[g]]:
                raise NonAssociative("projection is not a homomorphism")
    if proj.kernel_mask() != N.mask:
        raise NonAssociative("projection kernel differs from N")


# -- isomorphism and involvement -------------------------------------------


def _order_histogram(G):
    hist = {}
    for k in G.elem_orders:
        hist[k] = hist.get(k, 0) + 1
    return hist


def _iso_invariants(G):
    center = G.full_subgroup.center().order
    derived = standard_subgroup(G, "derived").order
    return (G.order, tuple(sorted(_order_histogram(G).items())), center, derived)


def _propagate(G, H, gen_images):
    """Extend generator images to a full map via the factorization; returns
    the image list or None if the result is not an injective homomorphism."""
    gens = G.generators()
    img_of_gen = dict(zip(gens, gen_images))
    fact = G.factorization()
    n = G.order
    images = [None] * n
    images[0] = 0
    for x, parent, g in fact:
        images[x] = H._mul[images[parent]][img_of_gen[g]]
    if len(set(images)) != n:
        return None
    hm = H._mul
    gm = G._mul
    for x in range(n):
        ix = images[x]
        for g in gens:
            if images[gm[x][g]] != hm[ix][img_of_gen[g]]:
                return None
    return images


def _gen_image_candidates(G, H):
    gens = G.generators()
    by_order = {}
    for x in range(H.order):
        by_order.setdefault(H.elem_orders[x], []).append(x)
    pools = []
    for g in gens:
        pool = by_order.get(G.elem_orders[g])
        if not pool:
            return None
        pools.append(pool)
    return pools


def _iso_search(G, H, find_all=False):
    pools = _gen_image_candidates(G, H)
    if pools is None:
        return [] if find_all else None
    results = []

    def rec(i, chosen):
        if i == len(pools):
            images = _propagate(G, H, chosen)
            if images is not None:
                results.append(images)
                return not find_all
            return False
        for cand in pools[i]:
            if rec(i + 1, chosen + [cand]):
                return True
        return False

    rec(0, [])
    if find_all:
        return results
    return results[0] if results else None


def is_isomorphic(G, H, cap=DEFAULT_ORDER_CAP):
    """(bool, witness GroupMorphism or None); exact backtracking search."""
    if G.order > cap or H.order > cap:
        raise OrderCapExceeded("isomorphism test beyond order cap")
    if _iso_invariants(G) != _iso_invariants(H):
        return False, None
    images = _iso_search(G, H)
    if images is None:
        return False, None
    witness = GroupMorphism(G.full_subgroup, H.full_subgroup,
                            dict(enumerate(images)))
    return True, witness


def automorphisms_raw(S, cap=DEFAULT_AUT_CAP):
    """All automorphisms of S as image lists (cached on the group)."""
    if S.order > cap:
        raise OrderCapExceeded(
            f"automorphism enumeration beyond cap {cap} (order {S.order})")
    if S._auts_raw is None:
        S._auts_raw = sorted(tuple(im) for im in _iso_search(S, S, find_all=True))
    return S._auts_raw


def automorphisms(S, cap=DEFAULT_AUT_CAP):
    """The full automorphism group of S as explicit bijective morphisms."""
    full = S.full_subgroup
    return [GroupMorphism(full, full, dict(enumerate(images)))
            for images in automorphisms_raw(S, cap=cap)]


def is_involved(H, G, cap=DEFAULT_ORDER_CAP):
    """Is H isomorphic to a section B/A of G?  Returns (bool, witness).

    The witness is a (B, A) Subgroup pair with B/A isomorphic to H.
    """
    if G.order > cap or H.order > cap:
        raise OrderCapExceeded("involvement test beyond order cap")
    h = H.order
    if G.order % h != 0:
        return False, None
    h_hist = tuple(sorted(_order_histogram(H).items()))
    for B in G.subgroups():
        if B.order % h != 0:
            continue
        bgens = B.generators()
        sub, embed = B.as_group()
        for A in B.subgroups_within():
            if B.order != A.order * h:
                continue
            if not all(A.conjugate_mask(g) == A.mask for g in bgens):
                continue
            a_local = sub.subgroup(mask_of(B.pos(x) for x in A.elems))
            Q, _ = quotient_group(sub, a_local)
            if tuple(sorted(_order_histogram(Q).items())) != h_hist:
                continue
            ok, _ = is_isomorphic(Q, H, cap=cap)
            if ok:
                return True, (B, A)
    return False, None
