"""Bilinear-map layer: F_p linear algebra, section spaces, the
gamma <-> Delta correspondence, and the equivariant enumeration."""

from __future__ import annotations

import numpy as np
import pytest

from holo.deltas import (
    BilinearDelta,
    SectionSpace,
    commutator_delta,
    delta_from_gamma,
    enumerate_deltas,
    gamma_from_delta,
    kernel_basis_fp,
    rref_fp,
    standard_spaces,
    symmetric_delta_basis,
    symmetric_delta_space,
)
from holo.errors import (
    HypothesisViolated,
    InconsistentPresentation,
    ShapeMismatch,
    UnsupportedModuli,
)
from holo.holomorph import GammaFunction, _central_aut_indices, rho_perm
from holo.presentations import preset


# -- F_p linear algebra ----------------------------------------------------


def test_rref_fp_known_matrix():
    A = np.array([[2, 1, 1], [1, 1, 3], [0, 4, 1]])  # det = -19, a unit mod 5
    R, pivots = rref_fp(A, 5)
    assert pivots == [0, 1, 2]
    assert np.array_equal(R, np.eye(3, dtype=np.int64))
    # idempotent, and singular input loses a pivot
    R2, pivots2 = rref_fp(np.array([[1, 2], [2, 4]]), 5)
    assert pivots2 == [0]
    assert np.array_equal(R2, [[1, 2], [0, 0]])
    R3, pivots3 = rref_fp(R2, 5)
    assert np.array_equal(R3, R2) and pivots3 == pivots2


def test_kernel_basis_fp_rank_nullity():
    rng = np.random.default_rng(7)
    for p in (3, 5):
        A = rng.integers(0, p, size=(4, 7))
        K = kernel_basis_fp(A, p)
        assert (A @ K.T % p == 0).all()
        _, pivots = rref_fp(A, p)
        assert len(pivots) + len(K) == 7
        # kernel rows independent
        _, kp = rref_fp(K, p)
        assert len(kp) == len(K)
    assert len(kernel_basis_fp(np.eye(3, dtype=np.int64), 3)) == 0
    assert len(kernel_basis_fp(np.zeros((0, 4), dtype=np.int64), 3)) == 4


# -- section spaces ---------------------------------------------------------


def test_quotient_section_mechanics(gp3):
    G = gp3["G"]
    v1 = SectionSpace.quotient(G, G.center(), "V")
    assert v1.rank == 2
    assert v1.moduli == [3, 3]
    q = np.arange(v1.table.n)
    assert np.array_equal(v1.from_G[v1.to_G[q]], q)
    for e in q:
        assert v1.elem_of_coords(v1.coords[e]) == e
    lut = v1.elem_table()
    strides = np.array([3, 1])
    assert np.array_equal(lut[v1.coords @ strides], q)


def test_subgroup_section_mechanics(gp3):
    G = gp3["G"]
    w = SectionSpace.subgroup(G, G.center(), "Z")
    assert w.moduli == [3, 3]
    outside = [g for g in range(G.n) if w.from_G[g] < 0]
    assert len(outside) == G.n - 9
    with pytest.raises(ShapeMismatch):
        w.coord_of(outside[0])
    # an automorphism acts invertibly on the characteristic subgroup
    auts = gp3["auts"]
    beta = auts.perms[auts.generating_set()[0]]
    M = w.matrix_of(beta)
    _, pivots = rref_fp(M, 3)
    assert len(pivots) == 2
    # a right translation moves Z off itself
    with pytest.raises(ShapeMismatch):
        w.matrix_of(rho_perm(G, int(G.generators[0])))


def test_standard_spaces_shapes(gp3, hp3):
    v1, v2, w = standard_spaces(gp3["G"])
    assert (v1.moduli, v2.moduli, w.moduli) == ([3, 3], [9, 3], [3, 3])
    v1, v2, w = standard_spaces(hp3["G"])
    assert (v1.moduli, v2.moduli, w.moduli) == ([3, 3], [3, 3], [3])
    assert np.array_equal(v1.to_G, v2.to_G)


def test_bilinear_values_must_be_annihilated():
    G = preset("abelian", factors=[9])
    pw = G.pow_table()
    cube = G.subgroup_closure(np.array([pw[G.generators[0], 3]]))
    v = SectionSpace.quotient(G, cube, "V")
    w = SectionSpace.subgroup(G, np.arange(G.n), "W")
    assert v.moduli == [3] and w.moduli == [9]
    with pytest.raises(ShapeMismatch):
        BilinearDelta(v, v, w, np.array([[[1]]]))
    d = BilinearDelta(v, v, w, np.array([[[3]]]))
    assert not d.is_zero() and d.is_symmetric()
    assert np.array_equal(d.value_coords(np.array([1]), np.array([2])), [6])
    with pytest.raises(ShapeMismatch):
        BilinearDelta(v, v, w, np.zeros((1, 2, 1), dtype=np.int64))


def test_commutator_delta_multiples(hp3):
    G = hp3["G"]
    comm = G.commutator_table()
    pw = G.pow_table()
    for c in range(3):
        d = commutator_delta(G, c)
        assert np.array_equal(d.value_table(), pw[comm, c])
        assert d.is_zero() == (c == 0)
        # skew map, odd p: symmetric only at zero
        assert d.is_symmetric() == (c == 0)


# -- gamma <-> Delta --------------------------------------------------------


@pytest.mark.parametrize("name", ["hp3", "free23", "gp3"])
def test_delta_gamma_round_trip(name, request):
    pipe = request.getfixturevalue(name)
    G, gens = pipe["G"], pipe["gens"]
    for rs in pipe["jd"]:
        gamma = gamma_from_delta(G, rs.delta, gens)
        assert gamma.key == rs.gamma.key
        back = delta_from_gamma(G, gamma)
        assert np.array_equal(back.value_table(), rs.delta.value_table())


def test_delta_from_gamma_needs_central_values(free23):
    G, auts = free23["G"], free23["auts"]
    zmask = np.zeros(G.n, dtype=bool)
    zmask[G.center()] = True
    ar = np.arange(G.n)
    noncentral = next(
        p for p in auts.perms if not zmask[G.table[G.inv, p]].all())
    rows = np.tile(noncentral, (G.n, 1))
    rows[0] = ar
    with pytest.raises(HypothesisViolated):
        delta_from_gamma(G, GammaFunction(G, rows))


def test_gamma_from_delta_rejects_non_solutions(hp3):
    G, gens = hp3["G"], hp3["gens"]
    v1, v2, w = standard_spaces(G)
    vals = np.zeros((2, 2, 1), dtype=np.int64)
    vals[0, 0, 0] = 1  # symmetric, nonzero: not a commutator multiple
    bad = BilinearDelta(v1, v2, w, vals)
    with pytest.raises(InconsistentPresentation):
        gamma_from_delta(G, bad, gens)


# -- enumeration ------------------------------------------------------------


def test_enumeration_refined_and_unrefined_agree(gp3):
    G, auts, gens = gp3["G"], gp3["auts"], gp3["gens"]
    central = list(auts.perms[_central_aut_indices(auts)])
    refined = enumerate_deltas(G, gens, central_aut_perms=central)
    plain = enumerate_deltas(G, gens)
    assert len(refined) == len(plain) == 9

    def tables(ds):
        return {np.asarray(d.value_table(), dtype=np.int64).tobytes()
                for d in ds}

    assert tables(refined) == tables(plain)


def test_enumeration_cap(hp3):
    with pytest.raises(UnsupportedModuli):
        enumerate_deltas(hp3["G"], hp3["gens"], enumerate_cap=1)


@pytest.mark.parametrize("name,count", [("hp3", 3), ("hp5", 5),
                                        ("free23", 3), ("gp3", 9)])
def test_jc_from_deltas_matches_direct_enumeration(name, count, request):
    pipe = request.getfixturevalue(name)
    assert len(pipe["jd"]) == count
    assert {rs.key for rs in pipe["jd"]} == {rs.key for rs in pipe["jc"]}


@pytest.mark.parametrize("name", ["hp3", "hp5", "free23"])
def test_solution_deltas_are_commutator_multiples(name, request):
    pipe = request.getfixturevalue(name)
    G = pipe["G"]
    p = G.prime()
    got = {np.asarray(rs.delta.value_table(), dtype=np.int64).tobytes()
           for rs in pipe["jd"]}
    comm = G.commutator_table()
    pw = G.pow_table()
    want = {np.asarray(pw[comm, c], dtype=np.int64).tobytes()
            for c in range(p)}
    assert got == want


@pytest.mark.parametrize("name", ["gp3", "gp5"])
def test_two_parameter_tables_cover_the_solution_set(name, request):
    from holo.tgroup import two_param_family_table

    pipe = request.getfixturevalue(name)
    G = pipe["G"]
    p = G.prime()
    fam = {}
    for s in range(p):
        for t in range(p):
            fam[(s, t)] = np.asarray(two_param_family_table(G, s, t),
                                     dtype=np.int64).tobytes()
    assert len(set(fam.values())) == p * p
    got = {np.asarray(rs.delta.value_table(), dtype=np.int64).tobytes()
           for rs in pipe["jd"]}
    assert got == set(fam.values())


# -- the symmetric space ----------------------------------------------------


@pytest.mark.parametrize("n,dim", [(4, 60), (5, 150)])
def test_symmetric_basis_dimensions(n, dim):
    basis = symmetric_delta_basis(n)
    assert len(basis) == dim
    flat = np.stack([b.ravel() for b in basis])
    for b in basis:
        assert np.array_equal(b, b.transpose(1, 0, 2))
    for p in (3, 5):
        _, pivots = rref_fp(flat, p)
        assert len(pivots) == dim


def test_symmetric_space_shape_refusals(gp3, free23):
    # Z(G) != G' on the first group; Aut not all central on the second
    with pytest.raises(ShapeMismatch):
        symmetric_delta_space(gp3["G"], gp3["auts"])
    with pytest.raises(HypothesisViolated):
        symmetric_delta_space(free23["G"], free23["auts"])
