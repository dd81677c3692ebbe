"""Built-in desk-scale group catalog.

Every entry carries a faithful permutation presentation on <= 64 points and
an expected order that is re-checked by ``validate_catalog``.  The largest
entry is Qd(3) of order 216.
"""

from __future__ import annotations

from .groups import (
    FiniteGroup,
    build_group,
    group_from_function,
    regular_generators,
)

_SL23_GENS = (((1, 1), (0, 1)), ((0, 2), (1, 0)))  # transvection, rotation
_GL23_GENS = (((1, 1), (0, 1)), ((0, 1), (1, 0)))  # transvection, swap (det -1)


def _f3_vectors(dim):
    if dim == 1:
        return [(a,) for a in range(3)]
    return [(a,) + v for a in range(3) for v in _f3_vectors(dim - 1)]


def _matvec(mat, vec, p):
    return tuple(sum(mat[i][j] * vec[j] for j in range(len(vec))) % p
                 for i in range(len(mat)))


def _linear_perms(mats, p, dim):
    """Permutations of the nonzero vectors of F_p^dim (faithful for SL/GL)."""
    vecs = [v for v in _vectors(p, dim) if any(v)]
    index = {v: i for i, v in enumerate(vecs)}
    return [tuple(index[_matvec(m, v, p)] for v in vecs) for m in mats]


def _vectors(p, dim):
    if dim == 0:
        return [()]
    return [(a,) + v for a in range(p) for v in _vectors(p, dim - 1)]


def affine_qd_perms(p):
    """Generators of (Z_p x Z_p) : SL(2,p) acting on the p^2 vectors."""
    vecs = _vectors(p, 2)
    index = {v: i for i, v in enumerate(vecs)}
    if p == 2:
        sl_gens = (((1, 1), (0, 1)), ((0, 1), (1, 0)))
    else:
        sl_gens = (((1, 1), (0, 1)), ((0, p - 1), (1, 0)))
    perms = [tuple(index[_matvec(m, v, p)] for v in vecs) for m in sl_gens]
    shift = tuple(index[((v[0] + 1) % p, v[1])] for v in vecs)
    perms.append(shift)
    return perms


def _heisenberg3_perms():
    """Upper unitriangular 3x3 over F_3 acting on F_3^3 (order 27, exponent 3)."""
    vecs = _vectors(3, 3)
    index = {v: i for i, v in enumerate(vecs)}
    x = ((1, 1, 0), (0, 1, 0), (0, 0, 1))
    y = ((1, 0, 0), (0, 1, 1), (0, 0, 1))
    return [tuple(index[_matvec(m, v, 3)] for v in vecs) for m in (x, y)]


def _extraspecial27_exp9():
    """C9 : C3 with b a b^-1 = a^4 (order 27, exponent 9), regular perms."""
    elems = [(i, j) for j in range(3) for i in range(9)]

    def op(u, v):
        i, j = u
        k, l = v
        return ((i + k * pow(4, j, 9)) % 9, (j + l) % 3)

    g = group_from_function(elems, op, name="tmp")
    return regular_generators(g)


def _c13c3_perms():
    """C13 : C3 as affine maps x -> 3^j x + i on 13 points."""
    a = tuple((x + 1) % 13 for x in range(13))
    b = tuple((3 * x) % 13 for x in range(13))
    return [a, b]


def _perm_specs():
    s = {}
    s["C2"] = (2, [(1, 0)])
    s["C3"] = (3, [(1, 2, 0)])
    s["C4"] = (4, [(1, 2, 3, 0)])
    s["V4"] = (4, [(1, 0, 3, 2), (2, 3, 0, 1)])
    s["S3"] = (6, [(1, 0, 2), (1, 2, 0)])
    s["D8"] = (8, [(1, 2, 3, 0), (2, 1, 0, 3)])  # rotation, reflection
    s["Q8"] = (8, None)  # built from the unit quaternions below
    s["C3xC3"] = (9, [(1, 2, 0, 3, 4, 5), (0, 1, 2, 4, 5, 3)])
    s["A4"] = (12, [(1, 2, 0, 3), (0, 2, 3, 1)])
    s["S4"] = (24, [(1, 0, 2, 3), (1, 2, 3, 0)])
    s["SL(2,3)"] = (24, _linear_perms(_SL23_GENS, 3, 2))
    s["GL(2,3)"] = (48, _linear_perms(_GL23_GENS, 3, 2))
    s["3^(1+2)+"] = (27, _heisenberg3_perms())
    s["3^(1+2)-"] = (27, _extraspecial27_exp9())
    s["C13:C3"] = (39, _c13c3_perms())
    s["Qd(3)"] = (216, affine_qd_perms(3))
    return s


def _quaternion_perms():
    units = [(s, k) for s in (1, -1) for k in "1ijk"]

    def qmul(u, v):
        table = {("1", "1"): (1, "1"), ("1", "i"): (1, "i"),
                 ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
                 ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"),
                 ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
                 ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"),
                 ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
                 ("k", "1"): (1, "k"), ("k", "i"): (1, "j"),
                 ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1")}
        s, a = u
        t, b = v
        r, c = table[(a, b)]
        return (s * t * r, c)

    g = group_from_function(units, qmul, name="tmp")
    return regular_generators(g, [g.generators()[0], g.generators()[1]])


CATALOG_NAMES = ["C2", "C3", "C4", "V4", "S3", "D8", "Q8", "C3xC3", "A4",
                 "S4", "SL(2,3)", "GL(2,3)", "3^(1+2)+", "3^(1+2)-",
                 "C13:C3", "Qd(3)"]

EXPECTED_ORDERS = {"C2": 2, "C3": 3, "C4": 4, "V4": 4, "S3": 6, "D8": 8,
                   "Q8": 8, "C3xC3": 9, "A4": 12, "S4": 24, "SL(2,3)": 24,
                   "GL(2,3)": 48, "3^(1+2)+": 27, "3^(1+2)-": 27,
                   "C13:C3": 39, "Qd(3)": 216}

_cache: dict[str, FiniteGroup] = {}


def catalog_group(name) -> FiniteGroup:
    """Build (and memoize) a catalog group by name."""
    if name not in _cache:
        specs = _perm_specs()
        if name not in specs:
            raise KeyError(f"unknown catalog group {name!r}")
        expected, perms = specs[name]
        if name == "Q8":
            perms = _quaternion_perms()
        g = build_group(perms, name=name, kind="perms")
        if g.order != expected:
            raise AssertionError(
                f"catalog group {name} has order {g.order}, expected {expected}")
        _cache[name] = g
    return _cache[name]


def catalog() -> dict[str, FiniteGroup]:
    """The full built-in catalog, in canonical order."""
    return {name: catalog_group(name) for name in CATALOG_NAMES}


def validate_catalog():
    """Order checks plus the Qd(2) ~ S4 isomorphism sanity check."""
    from .groups import is_isomorphic

    report = {}
    for name in CATALOG_NAMES:
        g = catalog_group(name)
        report[name] = (g.order, EXPECTED_ORDERS[name])
        if g.order != EXPECTED_ORDERS[name]:
            raise AssertionError(f"catalog order mismatch for {name}")
    qd2 = build_group(affine_qd_perms(2), name="Qd(2)", kind="perms")
    ok, _ = is_isomorphic(qd2, catalog_group("S4"))
    if not ok:
        raise AssertionError("Qd(2) is not isomorphic to the S4 entry")
    return report
