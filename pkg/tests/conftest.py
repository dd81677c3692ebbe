import pytest

from fusionlab.catalog import CATALOG_NAMES, catalog_group
from fusionlab.fusion import realize_fusion
from fusionlab.groups import build_group


@pytest.fixture(scope="session")
def cat():
    """name -> FiniteGroup for every built-in group."""
    return {name: catalog_group(name) for name in CATALOG_NAMES}


@pytest.fixture(scope="session")
def systems(cat):
    """(name, p) -> realized fusion system for every catalog pair p | |G|."""
    out = {}
    for name, G in cat.items():
        for p in (2, 3):
            if G.order % p == 0:
                out[(name, p)] = realize_fusion(G, p)
    return out


@pytest.fixture(scope="session")
def wreath648():
    """F3^3 : (C2^3 : C3); Sylow-3 is C3 wr C3, where A(S) < B(S) so the
    W-growth loop takes a genuine step."""
    vecs = [(a, b, c) for a in range(3) for b in range(3) for c in range(3)]
    idx = {v: i for i, v in enumerate(vecs)}
    t = tuple(idx[((v[0] + 1) % 3, v[1], v[2])] for v in vecs)
    s = tuple(idx[(v[2], v[0], v[1])] for v in vecs)
    d = tuple(idx[((-v[0]) % 3, v[1], v[2])] for v in vecs)
    return build_group([t, s, d], name="W648", kind="perms")
