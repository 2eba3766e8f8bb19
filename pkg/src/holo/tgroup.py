"""T(G) = NHol(G)/Hol(G) as a concrete group on theta classes.

A permutation theta normalizing Hol(G) is known by the regular
subgroup it produces, N = rho(G)^theta, and hence by that subgroup's
gamma.  Classes multiply through representatives: compose two thetas,
read off the gamma of the composite, and look it up.  gamma is a
complete class invariant, so the table is well defined; representative
permutations are search artifacts and never enter equality tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, log
from typing import Optional

import numpy as np

from .automorphisms import AutGroup, table_isomorphism
from .deltas import BilinearDelta
from .errors import (
    ClosureFailure,
    HypothesisViolated,
    InconsistentPresentation,
    NoIsomorphism,
    NotAGroup,
    NotInNHol,
    ShapeMismatch,
)
from .groups import GroupTable, compose
from .holomorph import GammaFunction, RegularSubgroup, nu_perms, rho_perm

__all__ = [
    "ThetaClass",
    "TGroup",
    "TReport",
    "extract_gamma_rows",
    "gamma_from_theta",
    "theta_for",
    "build_t_group",
    "t_action_check",
    "power_theta_family",
    "iso_to_circle_from_gen_images",
    "two_param_family_table",
    "theta_two_param_family",
    "theta_from_symmetric_delta",
    "theta_delta_family",
    "agl1_table",
    "analyze",
]


@dataclass
class ThetaClass:
    """One element of T(G): a 1-fixing representative and its gamma."""

    theta: np.ndarray
    gamma: GammaFunction
    power_d: Optional[int] = None
    delta: Optional[BilinearDelta] = field(default=None, repr=False)

    @property
    def key(self) -> str:
        return self.gamma.key


def extract_gamma_rows(G: GroupTable, theta: np.ndarray) -> np.ndarray:
    """rows[h] of the gamma defined by g^{gamma(h)} = (g^{theta'} h^{theta'})^theta h^{-1}.

    Pure arithmetic, no validation; theta must fix element 0.
    """
    tinv = np.argsort(theta)
    circ = theta[G.table[tinv[:, None], tinv[None, :]]]  # x o h under rho(G)^theta
    return G.table[circ.T, G.inv[:, None]]


def gamma_from_theta(G: GroupTable, theta: np.ndarray,
                     aut_gens: list[np.ndarray]) -> GammaFunction:
    """The gamma of rho(G)^theta, fully validated.

    Raises NotInNHol when the extracted map breaks any of the defining
    laws, which is exactly the case theta does not normalize Hol(G).
    """
    theta = np.asarray(theta)
    if theta.shape != (G.n,) or len(np.unique(theta)) != G.n:
        raise ShapeMismatch("theta must be a permutation of the group elements")
    if theta[0] != 0:
        raise ShapeMismatch("theta must fix the identity element")
    gamma = GammaFunction(G, extract_gamma_rows(G, theta))
    bad = gamma.violation(aut_gens, rows_verified=False)
    if bad is not None:
        raise NotInNHol(f"theta does not normalize the holomorph: {bad}")
    return gamma


def theta_for(G: GroupTable, rs: RegularSubgroup) -> ThetaClass:
    """The class of a member of H(G), from its stored isomorphism.

    Verifies rho(g)^theta = nu(g^theta) for every g, and that the
    subgroup reached is the given one (same gamma rows).
    """
    if rs.iso_to_G is None:
        raise NoIsomorphism(
            "no isomorphism attached: not in H(G) or hc_set not run")
    theta = np.asarray(rs.iso_to_G)
    tinv = np.argsort(theta)
    conj = theta[G.table[tinv]]  # [x, g] = (theta^{-1} rho(g) theta)(x)
    if not np.array_equal(conj, rs.nu[theta].T):
        raise InconsistentPresentation(
            "stored isomorphism does not conjugate rho(G) onto the subgroup")
    if not np.array_equal(extract_gamma_rows(G, theta), rs.gamma.rows):
        raise InconsistentPresentation(
            "extracted gamma disagrees with the subgroup's gamma")
    return ThetaClass(theta=theta, gamma=rs.gamma)


@dataclass
class TGroup:
    """T(G) with its class list and honest multiplication table."""

    group: GroupTable
    classes: list[ThetaClass]
    key_index: dict[str, int]

    @property
    def order(self) -> int:
        return self.group.n

    def class_of_theta(self, G: GroupTable, theta: np.ndarray) -> int:
        key = GammaFunction(G, extract_gamma_rows(G, theta)).key
        if key not in self.key_index:
            raise ClosureFailure("theta reaches a subgroup outside H(G)")
        return self.key_index[key]


def build_t_group(G: GroupTable, hc: list[RegularSubgroup],
                  aut_gens: list[np.ndarray]) -> TGroup:
    """Assemble T(G) on the classes of hc.

    The identity class (gamma trivial) gets index 0.  Every product of
    representatives must land on a known gamma; a miss is raised as
    ClosureFailure since it would contradict the regular action of
    T(G) on H(G).  Well-definedness under representative changes is
    sampled with Hol(G) elements on both sides.
    """
    if not hc:
        raise InconsistentPresentation("hc is empty; rho(G) itself is always a member")
    classes = [theta_for(G, rs) for rs in hc]
    trivial = [c for c in classes if c.gamma.is_trivial()]
    if len(trivial) != 1:
        raise InconsistentPresentation("expected exactly one identity class")
    rest = sorted((c for c in classes if not c.gamma.is_trivial()),
                  key=lambda c: c.key)
    classes = trivial + rest
    key_index = {c.key: i for i, c in enumerate(classes)}
    if len(key_index) != len(classes):
        raise InconsistentPresentation("gamma keys collide across classes")

    k = len(classes)
    table = np.zeros((k, k), dtype=np.int64)
    for i, ci in enumerate(classes):
        for j, cj in enumerate(classes):
            prod = compose(ci.theta, cj.theta)
            key = GammaFunction(G, extract_gamma_rows(G, prod)).key
            if key not in key_index:
                raise ClosureFailure(
                    f"product of classes {i} and {j} left the class set")
            table[i, j] = key_index[key]
    group = GroupTable(table, name=f"T({G.name})")

    samples = list(aut_gens[:2]) + [rho_perm(G, s) for s in G.generating_set()[:2]]
    for i, ci in enumerate(classes):
        for s in samples:
            for prod in (compose(s, ci.theta), compose(ci.theta, s)):
                prod = compose(prod, rho_perm(G, G.inv[prod[0]]))  # refix identity
                key = GammaFunction(G, extract_gamma_rows(G, prod)).key
                if key_index.get(key) != i:
                    raise InconsistentPresentation(
                        "class changed under a Hol(G) representative shift")
    return TGroup(group=group, classes=classes, key_index=key_index)


def t_action_check(G: GroupTable, tg: TGroup, jc: list[RegularSubgroup]) -> bool:
    """Conjugation action of T(G) on subgroup gammas is regular on H(G).

    a[t, i] = the gamma reached by conjugating subgroup i with class t;
    regularity means each hc column is a point in a Latin action: for
    every ordered pair there is exactly one class connecting them.
    Conjugates of J members must stay in J as well.
    """
    jc_keys = {rs.key: idx for idx, rs in enumerate(jc)}
    hc_keys = {c.key for c in tg.classes}
    act = np.zeros((tg.order, len(jc)), dtype=np.int64)
    for t, cls in enumerate(tg.classes):
        theta, tinv = cls.theta, np.argsort(cls.theta)
        for i, rs in enumerate(jc):
            conj = theta[rs.nu[:, tinv]]
            rows = np.empty_like(rs.gamma.rows)
            rows[theta] = G.table[conj, G.inv[theta][:, None]]
            key = GammaFunction(G, rows).key
            if key not in jc_keys:
                return False
            act[t, i] = jc_keys[key]
    hc_idx = [i for i, rs in enumerate(jc) if rs.key in hc_keys]
    for i in hc_idx:
        col = act[:, i]
        if sorted(col.tolist()) != sorted(hc_idx):
            return False
    return True


# -- the power-map family --------------------------------------------------


def power_theta_family(G: GroupTable,
                       aut_gens: list[np.ndarray]) -> list[ThetaClass]:
    """Classes of the power maps x -> x^d, d coprime to p mod exp(G/Z).

    Each member is verified on three levels: the permutation identity
    rho(g)^{theta_d} = iota(g^{(1-d)/2}) rho(g^d) for every g, the
    closed form gamma(h) = iota(h^{(d'-1)/2}) against the extracted
    gamma, and closure theta_{d1} theta_{d2} = theta_{d1 d2} at the
    class level.  The family is cyclic of order phi(exp(G/Z)).
    """
    Q, _ = G.quotient(G.center())
    m = Q.exponent()
    expg = G.exponent()
    if expg % 2 == 0:
        raise HypothesisViolated("power family needs odd group exponent")
    inv2 = pow(2, -1, expg)
    pw = G.pow_table()
    ar = np.arange(G.n)
    units = [d for d in range(1, m + 1) if gcd(d, m) == 1] if m > 1 else [1]

    out: list[ThetaClass] = []
    for d in units:
        theta = pw[:, d].astype(np.int64)
        if len(np.unique(theta)) != G.n:
            raise InconsistentPresentation(f"power map d={d} is not bijective")
        gamma = gamma_from_theta(G, theta, aut_gens)

        d_prime = pow(d, -1, expg)
        k = (d_prime - 1) * inv2 % expg
        zz = pw[:, k]
        expected = G.table[G.table[G.inv[zz], :], zz[:, None]]
        if not np.array_equal(gamma.rows, expected):
            raise InconsistentPresentation(
                f"gamma of theta_{d} is not iota(h^(d'-1)/2)")

        tinv = np.argsort(theta)
        lhs = theta[G.table[tinv]].T                  # row g: theta' rho(g) theta
        a = pw[:, (1 - d) * inv2 % expg]
        b = pw[:, d % expg]
        rhs = G.table[G.table[G.table[G.inv[a]], a[:, None]], b[:, None]]
        if not np.array_equal(lhs, rhs):
            raise InconsistentPresentation(
                f"rho(g)^theta_{d} != iota(g^[(1-d)/2]) rho(g^d)")
        out.append(ThetaClass(theta=theta, gamma=gamma, power_d=d))

    keys = {c.key for c in out}
    if len(keys) != len(out):
        raise InconsistentPresentation("power classes are not pairwise distinct")
    if m > 1:
        by_d = {c.power_d: c for c in out}
        for d1 in units:
            for d2 in units:
                prod = compose(by_d[d1].theta, by_d[d2].theta)
                key = GammaFunction(G, extract_gamma_rows(G, prod)).key
                if key != by_d[d1 * d2 % m].key:
                    raise InconsistentPresentation(
                        "power family is not closed under composition")
    return out


# -- explicit isomorphisms onto circle groups ------------------------------


def iso_to_circle_from_gen_images(G: GroupTable, circle: GroupTable,
                                  images: dict[int, int]) -> np.ndarray:
    """The isomorphism G -> (G, o) sending each generator to a chosen image.

    Built through normal-form exponents: the image of g = prod gen_i^e_i
    is the circle product of the image powers, taken in the same order.
    Full multiplicativity and bijectivity are verified; NoIsomorphism
    if the assignment does not extend.
    """
    if G.exps is None or G.generators is None:
        raise ShapeMismatch("need normal-form exponents to build the map")
    powc = circle.pow_table()
    ce = circle.exponent()
    theta = np.zeros(G.n, dtype=np.int64)
    for i, s in enumerate(G.generators):
        img = images[s]
        theta = circle.table[theta, powc[img, G.exps[:, i] % ce]]
    if len(np.unique(theta)) != G.n:
        raise NoIsomorphism("generator images do not give a bijection")
    if not np.array_equal(theta[G.table],
                          circle.table[theta[:, None], theta[None, :]]):
        raise NoIsomorphism("generator images do not extend to an isomorphism")
    return theta


def two_param_family_table(G: GroupTable, s: int, t: int) -> np.ndarray:
    """Value table of the (s, t) bilinear map on the two-generator preset.

    With elements in normal form x^a y^b, the map is the bilinear
    extension of Delta(x,x) = 1, Delta(x,y) = x^{pt}, Delta(y,x) =
    x^{ps}, Delta(y,y) = y^{p(s+t)} through the mod-p images of the
    exponents:  Delta(x^a y^b, x^c y^e) = x^{p(aet + bcs)} y^{pbe(s+t)}.
    """
    p = G.prime()
    pw = G.pow_table()
    x, y = G.generators[0], G.generators[1]
    a = G.exps[:, 0] % p
    b = G.exps[:, 1] % p
    e1 = (np.multiply.outer(a, b) * t + np.multiply.outer(b, a) * s) % p
    e2 = (np.multiply.outer(b, b) * (s + t)) % p
    return G.table[pw[x, p * e1], pw[y, p * e2]]


def theta_two_param_family(G: GroupTable, jc: list[RegularSubgroup],
                           aut_gens: list[np.ndarray]
                           ) -> dict[tuple[int, int], ThetaClass]:
    """The (d, s) family of theta maps on the two-generator p^4 preset.

    For each unit d mod p and each s in F_p, the member of J(G) whose
    bilinear map has parameters (s, t) with t = d^{-1} + s - 1 admits
    the isomorphism theta_{d,s}: x -> x, y -> y^d (the power taken in
    the circle group).  The function identifies that member by value
    table, builds the map, and verifies:

      * theta_{d,s} extracts exactly the member's gamma, so the class
        of theta_{d,s} in T(G) is the member's class;
      * the p(p-1) classes are pairwise distinct;
      * applying theta_{d,s} then theta_{e,u} lands in the class of
        theta_{de, s e^{-1} + u}, for every one of the (p(p-1))^2
        composable tuples.

    Any failure raises; the returned dict maps (d, s) to the class.
    """
    p = G.prime()
    if len(G.generators) != 2 or G.n != p ** 4:
        raise ShapeMismatch("the (d, s) family needs the two-generator p^4 preset")
    x, y = G.generators[0], G.generators[1]

    by_table: dict[bytes, RegularSubgroup] = {}
    for rs in jc:
        delta = rs.delta
        if delta is None:
            from .deltas import delta_from_gamma
            delta = delta_from_gamma(G, rs.gamma)
            rs.delta = delta
        by_table[np.asarray(delta.value_table(), dtype=np.int64).tobytes()] = rs

    fam: dict[tuple[int, int], ThetaClass] = {}
    for d in range(1, p):
        dd = pow(d, p - 2, p)
        for s in range(p):
            t = (dd + s - 1) % p
            key = np.asarray(two_param_family_table(G, s, t),
                             dtype=np.int64).tobytes()
            rs = by_table.get(key)
            if rs is None:
                raise ClosureFailure(
                    f"no member of J carries the (s, t) = ({s}, {t}) table")
            theta = iso_to_circle_from_gen_images(
                G, rs.circle, {x: x, y: int(rs.circle.pow_table()[y, d])})
            if not np.array_equal(extract_gamma_rows(G, theta), rs.gamma.rows):
                raise InconsistentPresentation(
                    f"theta_({d},{s}) does not extract its member's gamma")
            fam[(d, s)] = ThetaClass(theta, rs.gamma)

    if len({c.key for c in fam.values()}) != p * (p - 1):
        raise InconsistentPresentation("family classes are not pairwise distinct")

    key_of = {c.key: ds for ds, c in fam.items()}
    for (d1, s1), c1 in fam.items():
        for (d2, s2), c2 in fam.items():
            got = GammaFunction(
                G, extract_gamma_rows(G, compose(c1.theta, c2.theta))).key
            tgt = (d1 * d2 % p, (s1 * pow(d2, p - 2, p) + s2) % p)
            if key_of.get(got) != tgt:
                raise InconsistentPresentation(
                    f"composition law fails at ({d1},{s1}) * ({d2},{s2})")
    return fam


# -- the symmetric-Delta family --------------------------------------------


def theta_from_symmetric_delta(G: GroupTable, delta: BilinearDelta
                               ) -> tuple[np.ndarray, GroupTable]:
    """The permutation theta_Delta and its circle group, for symmetric Delta.

    theta_Delta(g) = g * q(g) where q collects Delta over the basis
    coordinates of g: q(g) = prod_{i<j} Delta(b_i,b_j)^{e_i e_j} *
    prod_i Delta(b_i,b_i)^{C(e_i,2)}, which splits the circle cocycle
    exactly when Delta is symmetric.  Verified to fix the centre
    pointwise, fix the basis lifts, satisfy the pair rule
    theta(b_i b_j) = b_i b_j Delta(b_i, b_j), and be an isomorphism
    onto (G, o) with g o h = g h Delta(g, h).
    """
    if not delta.is_symmetric():
        raise ShapeMismatch("theta_Delta needs a symmetric Delta")
    v, w = delta.v1, delta.w
    D = delta.value_table()
    try:
        circle = GroupTable(G.table[G.table, D], name=f"{G.name} circle")
    except NotAGroup as exc:
        raise NotAGroup(f"Delta does not induce a group: {exc}") from exc

    p = G.prime()
    inv2 = (p + 1) // 2
    C1 = delta.coords_of_all(v)
    mw = np.array(w.moduli, dtype=np.int64)
    t_full = np.einsum("gi,gj,ijw->gw", C1, C1, delta.vals)
    t_diag = np.einsum("gi,iiw->gw", C1, delta.vals)
    q = (t_full - t_diag) * inv2 % mw
    strides = np.ones(w.rank, dtype=np.int64)
    for i in range(w.rank - 2, -1, -1):
        strides[i] = strides[i + 1] * w.moduli[i + 1]
    lookup = w.elem_table()
    qelem = w.to_G[lookup[q @ strides]] if w.rank else np.zeros(G.n, dtype=np.int64)
    theta = G.table[np.arange(G.n), qelem].astype(np.int64)

    if len(np.unique(theta)) != G.n:
        raise InconsistentPresentation("theta_Delta is not a bijection")
    z = G.center()
    if not np.array_equal(theta[z], z):
        raise InconsistentPresentation("theta_Delta moves the centre")
    lifts = v.lifts()
    for i, bi in enumerate(lifts):
        if theta[bi] != bi:
            raise InconsistentPresentation("theta_Delta moves a basis lift")
        for j in range(i, len(lifts)):
            bj = lifts[j]
            pair = G.table[bi, bj]
            if theta[pair] != G.table[pair, D[bi, bj]]:
                raise InconsistentPresentation(
                    "pair rule theta(b_i b_j) = b_i b_j Delta(b_i,b_j) fails")
    if not np.array_equal(theta[G.table],
                          circle.table[theta[:, None], theta[None, :]]):
        raise InconsistentPresentation("theta_Delta is not an isomorphism")
    return theta, circle


def theta_delta_family(G: GroupTable, auts: AutGroup,
                       deltas: list[BilinearDelta]) -> list[ThetaClass]:
    """Classes of theta_Delta for symmetric Deltas, on an all-central group.

    Requires every automorphism of G to be central (then equivariance
    is automatic and each symmetric Delta really gives a T(G) class).
    Verifies the composition law theta_{D1} theta_{D2} = theta_{D1+D2}
    exactly, for every pair whose sum is in the input, which certifies
    an elementary abelian subgroup when the input is a subspace.
    """
    if not auts.is_central_subset().all():
        raise HypothesisViolated("theta_Delta classes need Aut(G) all central")
    gens = auts.gen_perms()
    out: list[ThetaClass] = []
    thetas: dict[tuple, np.ndarray] = {}
    for d in deltas:
        theta, _ = theta_from_symmetric_delta(G, d)
        gamma = gamma_from_theta(G, theta, gens)
        out.append(ThetaClass(theta=theta, gamma=gamma, delta=d))
        thetas[d.key()] = theta
    mw = np.array(out[0].delta.w.moduli, dtype=np.int64) if out else None
    for a in deltas:
        for b in deltas:
            skey = tuple(((a.vals + b.vals) % mw).ravel().tolist())
            if skey in thetas:
                if not np.array_equal(compose(thetas[a.key()], thetas[b.key()]),
                                      thetas[skey]):
                    raise InconsistentPresentation(
                        "theta_Delta composition law fails")
    keys = {c.key for c in out}
    if len(keys) != len(out):
        raise InconsistentPresentation("theta_Delta classes collide")
    return out


# -- structural analysis ----------------------------------------------------


def agl1_table(p: int) -> GroupTable:
    """AGL(1, p) as the maps x -> ax + b under left-to-right composition."""
    k = p * (p - 1)
    table = np.zeros((k, k), dtype=np.int64)
    for a1 in range(1, p):
        for b1 in range(p):
            for a2 in range(1, p):
                for b2 in range(p):
                    a, b = a1 * a2 % p, (a2 * b1 + b2) % p
                    table[(a1 - 1) * p + b1, (a2 - 1) * p + b2] = (a - 1) * p + b
    return GroupTable(table, name=f"agl1({p})")


@dataclass
class TReport:
    order: int
    abelian: bool
    exponent: int
    involutions: int
    inv_subgroup_order: int
    inv_subgroup_index: int
    cyclic: bool
    elem_abelian_p_rank: Optional[int]
    agl1p: Optional[bool]
    class_gammas: list[str]

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "abelian": self.abelian,
            "exponent": self.exponent,
            "involutions": self.involutions,
            "inv_subgroup_order": self.inv_subgroup_order,
            "inv_subgroup_index": self.inv_subgroup_index,
            "cyclic": self.cyclic,
            "elem_abelian_p_rank": self.elem_abelian_p_rank,
            "agl1p": self.agl1p,
            "class_gammas": self.class_gammas,
        }


def _looks_like_agl1(T: GroupTable, p: int) -> bool:
    if T.n != p * (p - 1) or T.is_abelian():
        return False
    orders = T.orders()
    if int((orders == p).sum()) != p - 1:   # unique subgroup of order p
        return False
    return bool((orders == p - 1).any())    # cyclic complement exists


def analyze(tg: TGroup, p: int) -> TReport:
    """Structural report on T(G); AGL(1,p) is recognized two ways.

    The structural test (nonabelian, order p(p-1), unique subgroup of
    order p, cyclic complement) and an explicit isomorphism search must
    agree, else the analysis itself is broken and an error is raised.
    """
    T = tg.group
    orders = T.orders()
    invs = np.nonzero(orders == 2)[0]
    inv_sub = T.subgroup_closure(np.concatenate(([0], invs)))
    exponent = T.exponent()
    abelian = T.is_abelian()
    rank: Optional[int] = None
    if T.n == 1:
        rank = 0
    elif abelian and exponent > 1:
        r = round(log(T.n, exponent))
        if exponent ** r == T.n and orders.max() == exponent and _is_prime(exponent):
            rank = r
    agl: Optional[bool] = None
    if p >= 3:
        structural = _looks_like_agl1(T, p)
        searched = (T.n == p * (p - 1)
                    and table_isomorphism(T, agl1_table(p)) is not None)
        if structural != searched:
            raise InconsistentPresentation(
                "structural AGL(1,p) test disagrees with isomorphism search")
        agl = structural
    return TReport(
        order=T.n,
        abelian=abelian,
        exponent=exponent,
        involutions=int(len(invs)),
        inv_subgroup_order=int(len(inv_sub)),
        inv_subgroup_index=T.n // int(len(inv_sub)),
        cyclic=bool((orders == T.n).any()),
        elem_abelian_p_rank=rank,
        agl1p=agl,
        class_gammas=[c.key for c in tg.classes],
    )


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True
