"""Disk cache for computed automorphism groups.

Automorphism enumeration is the dominant cost for the larger presets, so the
CLI can persist the permutation rows of Aut(G) and reload them on later runs.
Entries are keyed by the canonical hash of the multiplication table, which
makes the key independent of preset names and stable across processes.

A reloaded entry is never trusted blindly.  Before an ``AutGroup`` is built
from cached rows we re-verify everything that identifies them as a permutation
group of automorphisms: every row is a bijection fixing the identity, every
row is multiplicative (checked on generators against all elements, which
determines the homomorphism property on the whole group), the identity row is
present, and the set is closed under inversion.  Completeness of the set is
the one property that cannot be re-checked cheaply; it is vouched for by the
table hash in the entry itself.  Any failed check raises ``CacheCorrupt``,
and the convenience wrapper ``get_auts`` falls back to a fresh computation.
"""

from __future__ import annotations

import json
import os
import warnings
import zipfile
import zlib
from pathlib import Path

import numpy as np

from .automorphisms import AutGroup, automorphism_group
from .errors import CacheCorrupt
from .groups import GroupTable, compose

__all__ = [
    "CACHE_ENV_VAR",
    "cache_path",
    "default_cache_dir",
    "get_auts",
    "load_aut",
    "store_aut",
    "verify_aut_rows",
]

CACHE_ENV_VAR = "HOLO_CACHE_DIR"
FORMAT_VERSION = 1


def default_cache_dir() -> Path | None:
    """Directory named by the environment, or None when caching is off."""
    val = os.environ.get(CACHE_ENV_VAR, "").strip()
    return Path(val) if val else None


def cache_path(cache_dir: str | Path, group: GroupTable) -> Path:
    return Path(cache_dir) / f"aut-{group.canonical_hash()}.npz"


def verify_aut_rows(group: GroupTable, perms: np.ndarray) -> None:
    """Raise CacheCorrupt unless ``perms`` is a plausible Aut(G) listing.

    Multiplicativity is only tested on (generator, element) pairs: a bijection
    with p[ab] = p[a]p[b] for every generator a and every b is multiplicative
    on all products of generators, hence on the whole group.
    """
    n = group.n
    if perms.ndim != 2 or perms.shape[1] != n or len(perms) == 0:
        raise CacheCorrupt("cached automorphism array has the wrong shape")
    if perms.min() < 0 or perms.max() >= n:
        raise CacheCorrupt("cached automorphism entries out of range")
    order = np.argsort(perms, axis=1)
    ident = np.arange(n)
    if not (np.take_along_axis(perms, order, axis=1) == ident[None, :]).all():
        raise CacheCorrupt("cached rows are not all bijections")
    if (perms[:, 0] != 0).any():
        raise CacheCorrupt("cached rows do not all fix the identity")
    gens = group.generators if len(group.generators) else list(range(n))
    lhs = perms[:, group.table[gens, :]]
    rhs = group.table[perms[:, gens][:, :, None], perms[:, None, :]]
    if not (lhs == rhs).all():
        raise CacheCorrupt("cached rows are not all multiplicative")
    keys = {p.tobytes() for p in perms}
    if len(keys) != len(perms):
        raise CacheCorrupt("cached rows contain duplicates")
    if ident.astype(perms.dtype).tobytes() not in keys:
        raise CacheCorrupt("identity row missing from cache")
    for p in perms:
        if np.argsort(p).astype(perms.dtype).tobytes() not in keys:
            raise CacheCorrupt("cached rows are not inverse-closed")


def store_aut(group: GroupTable, auts: AutGroup, cache_dir: str | Path) -> Path:
    path = cache_path(cache_dir, group)
    path.parent.mkdir(parents=True, exist_ok=True)
    meta = json.dumps(
        {
            "format": FORMAT_VERSION,
            "hash": group.canonical_hash(),
            "n": group.n,
            "size": auts.size,
        },
        sort_keys=True,
    )
    tmp = path.with_suffix(".tmp.npz")
    np.savez_compressed(tmp, perms=auts.perms.astype(np.int32), meta=np.array(meta))
    os.replace(tmp, path)
    return path


def load_aut(group: GroupTable, cache_dir: str | Path) -> AutGroup | None:
    """Load and verify a cached Aut(G); None if absent, CacheCorrupt if bad."""
    path = cache_path(cache_dir, group)
    if not path.exists():
        return None
    try:
        with np.load(path, allow_pickle=False) as data:
            meta = json.loads(str(data["meta"]))
            perms = np.asarray(data["perms"], dtype=np.int64)
    except (OSError, ValueError, KeyError, json.JSONDecodeError,
            zlib.error, zipfile.BadZipFile) as exc:
        raise CacheCorrupt(f"unreadable cache file {path.name}: {exc}") from exc
    if meta.get("format") != FORMAT_VERSION:
        raise CacheCorrupt("cache format version mismatch")
    if meta.get("hash") != group.canonical_hash() or meta.get("n") != group.n:
        raise CacheCorrupt("cache entry does not match this group")
    if meta.get("size") != len(perms):
        raise CacheCorrupt("cache entry size disagrees with stored rows")
    verify_aut_rows(group, perms)
    auts = AutGroup(group, perms)
    # AutGroup sorts rows; make sure composition lands inside the listing for
    # a few pairs so an inverse-closed but non-closed set is still rejected.
    sample = auts.generating_set()[:4] or [int(auts.identity)]
    for i in sample:
        for j in sample:
            if auts.index_of(compose(auts.perms[i], auts.perms[j])) is None:
                raise CacheCorrupt("cached rows are not closed under composition")
    return auts


def get_auts(
    group: GroupTable,
    cache_dir: str | Path | None = None,
    *,
    budget: int | None = None,
) -> AutGroup:
    """Cached automorphism group, recomputing (with a warning) on corruption."""
    if cache_dir is None:
        cache_dir = default_cache_dir()
    if cache_dir is not None:
        try:
            cached = load_aut(group, cache_dir)
        except CacheCorrupt as exc:
            warnings.warn(f"ignoring corrupt automorphism cache: {exc}", stacklevel=2)
            cached = None
        if cached is not None:
            return cached
    kwargs = {} if budget is None else {"budget": budget}
    auts = automorphism_group(group, **kwargs)
    if cache_dir is not None:
        store_aut(group, auts, cache_dir)
    return auts
