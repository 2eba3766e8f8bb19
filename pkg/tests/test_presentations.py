"""Preset construction: orders, relations, normal forms, refusals."""

from __future__ import annotations

import numpy as np
import pytest

from holo.errors import (
    InconsistentPresentation,
    NotAGroup,
    OrderCapExceeded,
    UnsupportedPreset,
)
from holo.presentations import ClassTwoPresentation, build_group, preset


def comm(G, a, b):
    return G.table[G.table[G.inv[a], G.inv[b]], G.table[a, b]]


def test_gp_orders_and_relation():
    for p in (3, 5):
        G = preset("gp", p=p)
        assert G.n == p ** 4
        x, y = G.generators
        pw = G.pow_table()
        assert G.orders()[x] == p * p and G.orders()[y] == p * p
        # [x, y] = x^p
        assert comm(G, x, y) == pw[x, p]
        assert G.is_class_le_two() and not G.is_abelian()
        assert len(G.center()) == p * p
        assert len(G.derived()) == p


def test_hp_orders_and_relation():
    for p in (3, 5, 7):
        G = preset("hp", p=p)
        assert G.n == p ** 3
        x, y = G.generators
        pw = G.pow_table()
        assert G.orders()[x] == p * p and G.orders()[y] == p
        assert comm(G, x, y) == pw[x, p]
        assert len(G.center()) == p
        assert G.exponent() == p * p


def test_free_class_two_exponent_p():
    for p, n in ((3, 2), (5, 2), (3, 3)):
        G = preset("free_c2_exp_p", p=p, n=n)
        assert G.n == p ** (n + n * (n - 1) // 2)
        assert G.exponent() == p
        assert G.is_class_le_two()
        # the commutator of two distinct generators is nontrivial and central
        x0, x1 = G.generators[:2]
        c = comm(G, x0, x1)
        assert c != 0 and c in G.center()
        # derived subgroup is the full commutator space
        assert len(G.derived()) == p ** (n * (n - 1) // 2)


def test_abelian_presets():
    for factors, order in (([9], 9), ([25], 25), ([27], 27), ([3, 3], 9)):
        G = preset("abelian", factors=factors)
        assert G.n == order and G.is_abelian()
        assert G.exponent() == max(factors)


def test_normal_form_exponents_reconstruct_elements():
    G = preset("gp", p=3)
    pw = G.pow_table()
    for g in range(G.n):
        acc = 0
        for i, s in enumerate(G.generators):
            acc = G.table[acc, pw[s, G.exps[g, i]]]
        assert acc == g


def test_even_prime_refused():
    with pytest.raises(InconsistentPresentation):
        preset("gp", p=2)


def test_unknown_preset_refused():
    with pytest.raises(UnsupportedPreset):
        preset("nosuch", p=3)
    with pytest.raises(UnsupportedPreset):
        preset("gp")  # missing p
    with pytest.raises(UnsupportedPreset):
        preset("abelian")  # missing factors


def test_order_cap():
    with pytest.raises(OrderCapExceeded):
        preset("free_c2_exp_p", p=5, n=4)  # 5^10 far over the cap
    with pytest.raises(OrderCapExceeded):
        preset("gp", p=5, cap=100)


def test_presentation_rejects_non_central_commutator_targets():
    # [y, x] = y (not central) cannot define a class-two table; the bad
    # collection output is caught by table verification at the latest
    with pytest.raises((InconsistentPresentation, NotAGroup)):
        build_group(ClassTwoPresentation(
            p=3, rel_orders=[3, 3], commutators={(1, 0): [(1, 1)]},
            gen_names=["x", "y"], name="bad"))
