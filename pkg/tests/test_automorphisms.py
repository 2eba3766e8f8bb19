"""Automorphism listings against an independent brute-force oracle.

The oracle walks every pair (or triple) of candidate generator images,
extends each through normal-form exponents, and keeps the maps that are
bijective and fully multiplicative.  It shares no code with the search
in the library, so agreement pins both the counts and the sets.
"""

from __future__ import annotations

import numpy as np
import pytest

from holo.automorphisms import (
    automorphism_group,
    free_aut_generators,
    isomorphism_search,
    table_isomorphism,
)
from holo.errors import SearchBudgetExceeded
from holo.groups import compose
from holo.presentations import preset


def brute_force_auts(G) -> set[bytes]:
    """All automorphisms by exhaustion over generator images.

    Normal-form columns beyond the generators are commutator
    coordinates in lexicographic pair order; their images are forced,
    as commutators of the chosen generator images.
    """
    import itertools

    pw = G.pow_table()
    k = len(G.generators)
    ncols = G.exps.shape[1]
    pairs = [(j, l) for j in range(k) for l in range(j + 1, k)][: ncols - k]
    found = set()
    n = G.n

    def commel(a, b):
        return G.table[G.table[G.inv[a], G.inv[b]], G.table[a, b]]

    for images in itertools.product(range(n), repeat=k):
        full = list(images) + [commel(images[j], images[l]) for j, l in pairs]
        theta = np.zeros(n, dtype=np.int64)
        for i in range(ncols):
            theta = G.table[theta, pw[full[i], G.exps[:, i]]]
        if len(np.unique(theta)) != n:
            continue
        if np.array_equal(theta[G.table],
                          G.table[theta[:, None], theta[None, :]]):
            found.add(theta.tobytes())
    return found


@pytest.mark.parametrize("kw,count", [
    ({"name": "hp", "p": 3}, 54),
    ({"name": "free_c2_exp_p", "p": 3, "n": 2}, 432),
    ({"name": "gp", "p": 3}, 486),
])
def test_aut_counts_match_brute_force(kw, count):
    G = preset(**kw)
    auts = automorphism_group(G)
    oracle = brute_force_auts(G)
    assert auts.size == count
    assert {p.tobytes() for p in auts.perms} == oracle


def test_aut_group_structure():
    G = preset("hp", p=5)
    auts = automorphism_group(G)
    assert auts.size == 500
    # closed under composition and inversion; identity present
    ident = np.arange(G.n)
    assert auts.index_of(ident) == auts.identity
    gens = auts.generating_set()
    for i in gens:
        for j in gens:
            assert auts.compose_idx(i, j) is not None
        assert auts.index_of(compose(auts.perms[i],
                                     auts.perms[auts.inv_idx[i]])) == auts.identity
    # generating set actually spans
    assert len(auts.closure_of(list(gens))) == auts.size


def test_abelian_aut_counts():
    # cyclic p^k: phi(p^k); elementary 3^2: |GL(2,3)| = 48
    assert automorphism_group(preset("abelian", factors=[9])).size == 6
    assert automorphism_group(preset("abelian", factors=[27])).size == 18
    assert automorphism_group(preset("abelian", factors=[25])).size == 20
    assert automorphism_group(preset("abelian", factors=[3, 3])).size == 48


def test_free_aut_generators_generate_everything():
    G = preset("free_c2_exp_p", p=3, n=2)
    gens = free_aut_generators(G)
    auts = automorphism_group(G)
    idx = [auts.index_of(g) for g in gens]
    assert all(i is not None for i in idx)
    assert len(auts.closure_of([int(i) for i in idx])) == auts.size


def test_isomorphism_search_and_table_isomorphism():
    G = preset("hp", p=3)
    # relabel G by a random permutation fixing 0; search must find a map
    rng = np.random.default_rng(3)
    sigma = np.concatenate([[0], 1 + rng.permutation(G.n - 1)])
    inv_sigma = np.argsort(sigma)
    from holo.groups import GroupTable
    H = GroupTable(sigma[G.table[inv_sigma[:, None], inv_sigma[None, :]]],
                   name="relabel")
    iso = isomorphism_search(G, H)
    assert iso is not None
    assert np.array_equal(iso[G.table], H.table[iso[:, None], iso[None, :]])
    assert table_isomorphism(G, H) is not None
    # non-isomorphic same-order pair: exponent 9 vs exponent 3
    F = preset("free_c2_exp_p", p=3, n=2)
    assert table_isomorphism(G, F) is None


def test_search_budget_is_enforced():
    G = preset("gp", p=5)
    with pytest.raises(SearchBudgetExceeded):
        automorphism_group(G, budget=50)
