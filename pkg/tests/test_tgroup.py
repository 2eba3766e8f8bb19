"""T(G): class arithmetic, the power and (d, s) theta families, and the
structural reports."""

from __future__ import annotations

from math import comb

import numpy as np
import pytest

from holo.errors import (
    ClosureFailure,
    HypothesisViolated,
    NoIsomorphism,
    NotInNHol,
    ShapeMismatch,
)
from holo.groups import compose
from holo.holomorph import GammaFunction
from holo.tgroup import (
    agl1_table,
    build_t_group,
    extract_gamma_rows,
    gamma_from_theta,
    power_theta_family,
    t_action_check,
    theta_delta_family,
    theta_for,
    theta_two_param_family,
)


@pytest.fixture(scope="module")
def fam_gp3(gp3):
    return theta_two_param_family(gp3["G"], gp3["jd"], gp3["gens"])


@pytest.fixture(scope="module")
def fam_gp5(gp5):
    return theta_two_param_family(gp5["G"], gp5["jd"], gp5["gens"])


def test_agl1_table_structure():
    T3 = agl1_table(3)
    assert not T3.is_abelian()
    assert sorted(T3.orders().tolist()) == [1, 2, 2, 2, 3, 3]
    T5 = agl1_table(5)
    assert sorted(T5.orders().tolist()) == [1] + [2] * 5 + [4] * 10 + [5] * 4


@pytest.mark.parametrize("name,inv_index", [("gp3", 1), ("gp5", 2)])
def test_gp_report_is_affine_line_group(name, inv_index, request):
    pipe = request.getfixturevalue(name)
    p = pipe["G"].prime()
    rep = pipe["report"]
    assert rep.order == p * (p - 1)
    assert not rep.abelian and not rep.cyclic
    assert rep.agl1p is True
    assert rep.inv_subgroup_index == inv_index
    assert rep.involutions == p
    assert len(rep.class_gammas) == rep.order
    d = rep.as_dict()
    assert d["order"] == rep.order and d["agl1p"] is True


@pytest.mark.parametrize("name,order,rank", [("hp3", 2, 1), ("hp5", 4, None),
                                             ("hp7", 6, None),
                                             ("free23", 2, 1),
                                             ("free25", 4, None),
                                             ("free33", 2, 1)])
def test_cyclic_reports(name, order, rank, request):
    rep = request.getfixturevalue(name)["report"]
    assert rep.order == order
    assert rep.cyclic and rep.abelian
    assert rep.exponent == order
    assert rep.elem_abelian_p_rank == rank
    assert rep.agl1p is False


def test_abelian_t_is_trivial(abelians):
    for pipe in abelians.values():
        assert pipe["tg"].order == 1
        rep = pipe["report"]
        assert rep.elem_abelian_p_rank == 0
        assert rep.exponent == 1
        assert len(rep.class_gammas) == 1


def test_power_family_fills_cyclic_t(hp7):
    G, gens, tg = hp7["G"], hp7["gens"], hp7["tg"]
    fam = power_theta_family(G, gens)
    assert sorted(c.power_d for c in fam) == [1, 2, 3, 4, 5, 6]
    assert {c.key for c in fam} == set(tg.key_index)
    by = {c.power_d: c for c in fam}
    prod = compose(by[2].theta, by[3].theta)
    assert tg.class_of_theta(G, prod) == tg.class_of_theta(G, by[6].theta)


def test_inversion_theta(hp3, abelians):
    G, gens, tg = hp3["G"], hp3["gens"], hp3["tg"]
    pw = G.pow_table()
    th = pw[:, G.exponent() - 1].astype(np.int64)
    gamma = gamma_from_theta(G, th, gens)
    # gamma(h) is conjugation by h^{-1}
    expected = G.table[G.table, G.inv[:, None]]
    assert np.array_equal(gamma.rows, expected)
    idx = tg.key_index[gamma.key]
    assert tg.group.orders()[idx] == 2
    # on an abelian group inversion is an automorphism: trivial class
    A = abelians["c9"]["G"]
    inv_a = A.pow_table()[:, A.exponent() - 1].astype(np.int64)
    assert gamma_from_theta(A, inv_a, abelians["c9"]["gens"]).is_trivial()


def test_gamma_from_theta_rejections(hp3):
    G, gens = hp3["G"], hp3["gens"]
    swap = np.arange(G.n)
    swap[[3, 7]] = swap[[7, 3]]
    with pytest.raises(NotInNHol):
        gamma_from_theta(G, swap, gens)
    moved = np.roll(np.arange(G.n), 1)
    with pytest.raises(ShapeMismatch):
        gamma_from_theta(G, moved, gens)
    with pytest.raises(ShapeMismatch):
        gamma_from_theta(G, np.zeros(G.n, dtype=np.int64), gens)


def test_theta_for_members_and_missing_iso(hp3):
    G = hp3["G"]
    hc_keys = {rs.key for rs in hp3["hc"]}
    for rs in hp3["hc"]:
        cls = theta_for(G, rs)
        assert cls.key == rs.gamma.key
        assert cls.theta[0] == 0
    excluded = next(rs for rs in hp3["jd"] if rs.key not in hc_keys)
    assert excluded.iso_to_G is None
    with pytest.raises(NoIsomorphism):
        theta_for(G, excluded)


def test_build_t_group_rejects_non_closed_class_sets(hp7):
    G, gens, tg = hp7["G"], hp7["gens"], hp7["tg"]
    orders = tg.group.orders()
    by_key = {rs.gamma.key: rs for rs in hp7["hc"]}
    triv = by_key[tg.classes[0].key]
    gen6 = by_key[tg.classes[int(np.nonzero(orders == 6)[0][0])].key]
    with pytest.raises(ClosureFailure):
        build_t_group(G, [triv, gen6], gens)


def _check_two_param_family(pipe, fam):
    G, tg = pipe["G"], pipe["tg"]
    p = G.prime()
    assert len(fam) == p * (p - 1)
    assert fam[(1, 0)].gamma.is_trivial()
    assert {c.key for c in fam.values()} == set(tg.key_index)
    pw = G.pow_table()
    x, y = int(G.generators[0]), int(G.generators[1])
    for (d, s), cls in fam.items():
        t = (pow(d, p - 2, p) + s - 1) % p
        th = cls.theta
        # x-powers are fixed; y-powers pick up the quadratic correction
        assert np.array_equal(th[pw[x]], pw[x])
        for i in range(p * p):
            e = (d * i
                 + p * (comb(d, 2) * i + d * d * comb(i, 2)) * (s + t))
            assert th[pw[y, i]] == pw[y, e % (p * p)]


def test_two_param_family_gp3(gp3, fam_gp3):
    _check_two_param_family(gp3, fam_gp3)
    # one external composition: (2,1)^2 has parameter target (1, 0)
    G = gp3["G"]
    prod = compose(fam_gp3[(2, 1)].theta, fam_gp3[(2, 1)].theta)
    key = GammaFunction(G, extract_gamma_rows(G, prod)).key
    assert key == fam_gp3[(1, 0)].key


def test_two_param_family_gp5(gp5, fam_gp5):
    _check_two_param_family(gp5, fam_gp5)


def test_theta_delta_family_needs_all_central_auts(hp3):
    with pytest.raises(HypothesisViolated):
        theta_delta_family(hp3["G"], hp3["auts"], [])


@pytest.mark.parametrize("name", ["gp3", "hp3", "gp5"])
def test_t_action_is_regular_on_members(name, request):
    pipe = request.getfixturevalue(name)
    assert t_action_check(pipe["G"], pipe["tg"], pipe["jd"])
