"""On-disk result cache keyed by Cayley-table content hashes.

Caches subgroup lattices and realized hom-sets.  Keys are content hashes of
the multiplication table, so isomorphic-but-relabelled groups never collide.
Corrupt entries are dropped with a warning and recomputed; cache state can
never change results, only skip work.
"""

from __future__ import annotations

import json
import os
import sys
import tempfile

from .errors import CacheCorrupt

ENV_VAR = "FUSIONLAB_CACHE"


def default_cache_dir():
    env = os.environ.get(ENV_VAR)
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "fusionlab")


class ResultCache:
    """Lattice and hom-set cache bound to one directory (None = disabled)."""

    def __init__(self, cache_dir=None):
        self.cache_dir = cache_dir
        self.memo = {}

    def _path(self, kind, key):
        return os.path.join(self.cache_dir, f"{kind}-{key}.json")

    def _read(self, kind, key):
        if self.cache_dir is None:
            return None
        path = self._path(kind, key)
        if not os.path.exists(path):
            return None
        try:
            with open(path, "r", encoding="utf-8") as fh:
                return json.load(fh)
        except (OSError, ValueError) as exc:
            print(f"warning: dropping corrupt cache entry {path}: {exc}",
                  file=sys.stderr)
            try:
                os.unlink(path)
            except OSError:
                pass
            return None

    def _write(self, kind, key, payload):
        if self.cache_dir is None:
            return
        os.makedirs(self.cache_dir, exist_ok=True)
        path = self._path(kind, key)
        fd, tmp = tempfile.mkstemp(dir=self.cache_dir, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, sort_keys=True)
            os.replace(tmp, path)
        except OSError:
            try:
                os.unlink(tmp)
            except OSError:
                pass

    # -- lattices ------------------------------------------------------

    def attach_lattice(self, G):
        """Install a cached lattice onto G; returns True on a cache hit."""
        if G._lattice is not None:
            return True
        data = self._read("lattice", G.table_hash())
        if data is None:
            return False
        try:
            if data["order"] != G.order:
                raise CacheCorrupt("order mismatch")
            masks = [int(m, 16) for m in data["masks"]]
            for m in masks:
                G.subgroup(m)  # validates closure on install
            G._lattice = masks
            return True
        except Exception as exc:
            print(f"warning: invalid lattice cache for {G.name}: {exc}",
                  file=sys.stderr)
            return False

    def store_lattice(self, G):
        if G._lattice is None:
            return
        self._write("lattice", G.table_hash(),
                    {"order": G.order,
                     "masks": [format(m, "x") for m in G._lattice]})

    # -- realized hom-sets ------------------------------------------------

    def attach_homsets(self, F):
        key = f"{F.host.table_hash()}-p{F.p}-s{format(F.carrier.mask, 'x')}"
        data = self._read("homs", key)
        if data is None:
            return False
        try:
            for dom_hex, tuples in data["maps"].items():
                mask = int(dom_hex, 16)
                F._maps_cache[mask] = tuple(tuple(t) for t in tuples)
            return True
        except Exception as exc:
            print(f"warning: invalid hom-set cache: {exc}", file=sys.stderr)
            F._maps_cache.clear()
            return False

    def store_homsets(self, F):
        key = f"{F.host.table_hash()}-p{F.p}-s{format(F.carrier.mask, 'x')}"
        payload = {"maps": {format(m, "x"): [list(t) for t in ts]
                            for m, ts in sorted(F._maps_cache.items())}}
        self._write("homs", key, payload)

    # -- generic memo (in-memory only) -----------------------------------

    def memoize(self, key, thunk):
        if key not in self.memo:
            self.memo[key] = thunk()
        return self.memo[key]
