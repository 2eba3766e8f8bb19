"""Bilinear-map side of the regular-subgroup correspondence.

For a class-two p-group (p odd) whose gamma satisfies (a) gamma(G) is
made of central automorphisms and (b) gamma(G) fixes the centre
pointwise, the assignment Delta(g Z, h G') = [g, gamma(h)] sets up a
bijection between such regular subgroups and the Aut-equivariant
bilinear maps G/Z x G/G' -> Z.  This module hosts the section spaces,
the translation in both directions, and the linear solver that
enumerates all equivariant Delta over F_p.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb

import numpy as np

from .errors import (
    HypothesisViolated,
    InconsistentPresentation,
    ShapeMismatch,
    UnsupportedModuli,
)
from .groups import GroupTable, abelian_basis
from .holomorph import GammaFunction, gamma_hypotheses_hold

__all__ = [
    "SectionSpace",
    "BilinearDelta",
    "rref_fp",
    "kernel_basis_fp",
    "delta_from_gamma",
    "gamma_from_delta",
    "enumerate_deltas",
    "commutator_delta",
    "symmetric_delta_space",
    "symmetric_delta_basis",
    "central_kernel_subgroup",
    "standard_spaces",
    "jc_from_deltas",
]

FALLBACK_LIMIT = 10**7


# -- F_p linear algebra --------------------------------------------------


def rref_fp(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p with first-nonzero pivoting."""
    A = np.array(A, dtype=np.int64) % p
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = A[r] * pow(int(A[r, c]), p - 2, p) % p
        for j in range(rows):
            if j != r and A[j, c]:
                A[j] = (A[j] - A[j, c] * A[r]) % p
        pivots.append(c)
        r += 1
    return A, pivots


def kernel_basis_fp(A: np.ndarray, p: int) -> np.ndarray:
    """Basis (rows) of the right null space of A over F_p."""
    A = np.asarray(A, dtype=np.int64)
    cols = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    R, pivots = rref_fp(A, p)
    free = [c for c in range(cols) if c not in pivots]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for k, c in enumerate(free):
        out[k, c] = 1
        for r, pc in enumerate(pivots):
            out[k, pc] = (-R[r, c]) % p
    return out


# -- section spaces -------------------------------------------------------


@dataclass
class SectionSpace:
    """An abelian section of G with a basis and coordinate maps.

    Wraps either a quotient G/K (to_G = coset representatives, from_G =
    projection) or a central subgroup (to_G = embedding, from_G =
    position, -1 outside).  basis/moduli/coords describe the abelian
    table; all coordinate arithmetic is componentwise mod moduli.
    """

    table: GroupTable
    to_G: np.ndarray
    from_G: np.ndarray
    basis: list[int]
    moduli: list[int]
    coords: np.ndarray
    name: str

    @classmethod
    def quotient(cls, G: GroupTable, kernel: np.ndarray, name: str) -> "SectionSpace":
        Q, proj = G.quotient(kernel)
        reps = np.zeros(Q.n, dtype=np.int64)
        for g in range(G.n - 1, -1, -1):
            reps[proj[g]] = g
        basis, moduli, coords = abelian_basis(Q)
        return cls(Q, reps, proj.astype(np.int64), basis, moduli, coords, name)

    @classmethod
    def subgroup(cls, G: GroupTable, members: np.ndarray, name: str) -> "SectionSpace":
        sub, embed = G.subgroup_table(members)
        pos = np.full(G.n, -1, dtype=np.int64)
        pos[embed] = np.arange(len(embed))
        basis, moduli, coords = abelian_basis(sub)
        return cls(sub, embed.astype(np.int64), pos, basis, moduli, coords, name)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def lifts(self) -> list[int]:
        """G-elements representing the basis."""
        return [int(self.to_G[b]) for b in self.basis]

    def coord_of(self, g: int) -> np.ndarray:
        e = int(self.from_G[g])
        if e < 0:
            raise ShapeMismatch(f"element {g} is outside the section {self.name}")
        return self.coords[e]

    def elem_table(self) -> np.ndarray:
        """Array mapping mixed-radix coordinate index -> section element."""
        strides = np.ones(self.rank, dtype=np.int64)
        for i in range(self.rank - 2, -1, -1):
            strides[i] = strides[i + 1] * self.moduli[i + 1]
        idx = (self.coords @ strides) if self.rank else np.zeros(self.table.n, dtype=np.int64)
        out = np.zeros(max(1, int(np.prod(self.moduli, dtype=np.int64))), dtype=np.int64)
        out[idx] = np.arange(self.table.n)
        return out

    def elem_of_coords(self, vec: np.ndarray) -> int:
        e = 0
        for b, m, v in zip(self.basis, self.moduli, np.asarray(vec)):
            e = self.table.mul(e, self.table.power(b, int(v) % m))
        return int(e)

    def matrix_of(self, perm: np.ndarray) -> np.ndarray:
        """Matrix of the action induced by a G-permutation on this section.

        Row i is the coordinate vector of the image of basis element i;
        coordinate rows transform as row-vector times matrix.  The
        induced action must stay inside the section (characteristic
        sections of automorphisms do), else ShapeMismatch.
        """
        M = np.zeros((self.rank, self.rank), dtype=np.int64)
        for i, g in enumerate(self.lifts()):
            M[i] = self.coord_of(int(perm[g]))
        return M


def central_kernel_subgroup(G: GroupTable, central_aut_perms: list[np.ndarray]) -> np.ndarray:
    """The subgroup K generated by all g^{-1} g^alpha, alpha central in Aut.

    Every gamma of a regular subgroup normal in Hol(G) kills K: the
    identity gamma([alpha, g^{-1}]) = [gamma(g), alpha] = 1 holds for
    alpha in the centre of Aut(G), and [alpha, g^{-1}] = g^alpha g^{-1}.
    """
    seeds = [0]
    ar = np.arange(G.n)
    for ap in central_aut_perms:
        seeds.extend(np.unique(G.table[ap, G.inv[ar]]).tolist())
    return G.subgroup_closure(np.unique(seeds))


def standard_spaces(G: GroupTable, *, kernel_extra: np.ndarray | None = None
                    ) -> tuple[SectionSpace, SectionSpace, SectionSpace]:
    """(V1, V2, W) = (G/Z, G/G'K, Z) for the Delta correspondence.

    kernel_extra enlarges the second kernel from G' to G'K for a
    subgroup K known to lie in ker(gamma) for every gamma under
    consideration; the pullback then reaches exactly the same Deltas.
    """
    v1 = SectionSpace.quotient(G, G.center(), "G/Z")
    k2 = G.derived()
    if kernel_extra is not None:
        k2 = G.subgroup_closure(np.union1d(k2, kernel_extra))
    v2 = SectionSpace.quotient(G, k2, "G/G'K" if kernel_extra is not None else "G/G'")
    w = SectionSpace.subgroup(G, G.center(), "Z")
    return v1, v2, w


# -- bilinear maps --------------------------------------------------------


class BilinearDelta:
    """A bilinear map V1 x V2 -> W given by its basis values.

    vals[i, j] is the W-coordinate vector of Delta on the (i, j) basis
    pair.  Construction checks the annihilator conditions that make the
    bilinear extension well defined over the section moduli.
    """

    def __init__(self, v1: SectionSpace, v2: SectionSpace, w: SectionSpace,
                 vals: np.ndarray):
        vals = np.asarray(vals, dtype=np.int64)
        if vals.shape != (v1.rank, v2.rank, w.rank):
            raise ShapeMismatch("basis value array has the wrong shape")
        mw = np.array(w.moduli, dtype=np.int64)
        vals = vals % mw
        for (i, j) in product(range(v1.rank), range(v2.rank)):
            for t in range(w.rank):
                v = int(vals[i, j, t])
                if (v * v1.moduli[i]) % w.moduli[t] or (v * v2.moduli[j]) % w.moduli[t]:
                    raise ShapeMismatch(
                        f"value at ({i},{j}) not annihilated by section moduli")
        self.v1, self.v2, self.w = v1, v2, w
        self.vals = vals
        self._table: np.ndarray | None = None

    def key(self) -> tuple:
        return tuple(self.vals.ravel().tolist())

    def is_zero(self) -> bool:
        return not self.vals.any()

    def is_symmetric(self) -> bool:
        if self.v1.rank != self.v2.rank:
            return False
        return np.array_equal(self.vals, self.vals.transpose(1, 0, 2))

    def value_coords(self, gvec: np.ndarray, hvec: np.ndarray) -> np.ndarray:
        mw = np.array(self.w.moduli, dtype=np.int64)
        return np.einsum("i,j,ijw->w", gvec, hvec, self.vals) % mw

    def value_table(self) -> np.ndarray:
        """Delta(g Z, h G') as a full |G| x |G| array of G-elements."""
        if self._table is None:
            G_n = len(self.v1.from_G)
            c1 = self.coords_of_all(self.v1)
            c2 = self.coords_of_all(self.v2)
            mw = np.array(self.w.moduli, dtype=np.int64)
            cw = np.einsum("gi,hj,ijw->ghw", c1, c2, self.vals) % mw
            strides = np.ones(self.w.rank, dtype=np.int64)
            for i in range(self.w.rank - 2, -1, -1):
                strides[i] = strides[i + 1] * self.w.moduli[i + 1]
            flat = cw @ strides if self.w.rank else np.zeros((G_n, G_n), dtype=np.int64)
            lookup = self.w.elem_table()
            self._table = self.w.to_G[lookup[flat]]
        return self._table

    @staticmethod
    def coords_of_all(space: SectionSpace) -> np.ndarray:
        return space.coords[space.from_G]

    def equivariant_under(self, perm: np.ndarray) -> bool:
        """Delta(g^beta, h^beta) = Delta(g,h)^beta at the value-table level."""
        D = self.value_table()
        return np.array_equal(D[perm][:, perm], perm[D])


# -- gamma <-> Delta ------------------------------------------------------


def delta_from_gamma(G: GroupTable, gamma: GammaFunction,
                     spaces: tuple[SectionSpace, SectionSpace, SectionSpace] | None = None
                     ) -> BilinearDelta:
    """Extract Delta(g Z, h G') = [g, gamma(h)] from a valid gamma.

    The central hypotheses are checked first; well-definedness across
    coset representatives and bilinearity are then verified exhaustively
    by rebuilding the full value table from the extracted basis values.
    """
    if not gamma_hypotheses_hold(G, gamma):
        raise HypothesisViolated(
            "gamma image is not central or moves the centre")
    v1, v2, w = spaces if spaces is not None else standard_spaces(G)
    rows = gamma.rows
    D = G.table[G.inv[:, None], rows.T]  # [g, gamma(h)] = g^{-1} g^{gamma(h)}
    if (w.from_G[D] < 0).any():
        raise HypothesisViolated("commutators [g, gamma(h)] leave the centre")
    rep1 = v1.to_G[v1.from_G]
    rep2 = v2.to_G[v2.from_G]
    if not np.array_equal(D, D[rep1][:, rep2]):
        raise HypothesisViolated(
            "[g, gamma(h)] is not constant on section cosets")
    vals = np.zeros((v1.rank, v2.rank, w.rank), dtype=np.int64)
    for i, gi in enumerate(v1.lifts()):
        for j, hj in enumerate(v2.lifts()):
            vals[i, j] = w.coord_of(int(D[gi, hj]))
    delta = BilinearDelta(v1, v2, w, vals)
    if not np.array_equal(delta.value_table(), D):
        raise InconsistentPresentation(
            "extracted basis values do not reproduce [g, gamma(h)]: not bilinear")
    return delta


def gamma_from_delta(G: GroupTable, delta: BilinearDelta,
                     aut_gens: list[np.ndarray]) -> GammaFunction:
    """Rebuild gamma from Delta via g^{gamma(h)} = g Delta(g Z, h G').

    The result is validated in full against the defining laws (each
    value an automorphism, anti-homomorphism, equivariance under the
    given Aut generators), so an invalid Delta cannot slip through.
    """
    D = delta.value_table()
    rows = G.table[np.arange(G.n, dtype=np.int64)[None, :], D.T]
    gamma = GammaFunction(G, rows)
    bad = gamma.violation(aut_gens, rows_verified=False)
    if bad is not None:
        raise InconsistentPresentation(f"Delta does not induce a gamma: {bad}")
    return gamma


def commutator_delta(G: GroupTable, c: int,
                     spaces=None) -> BilinearDelta:
    """The map (g Z, h G') -> [g, h]^c, for class-two G."""
    if not G.is_class_le_two():
        raise ShapeMismatch("commutator Delta needs a class-two group")
    v1, v2, w = spaces if spaces is not None else standard_spaces(G)
    comm = G.commutator_table()
    pw = G.pow_table()
    vals = np.zeros((v1.rank, v2.rank, w.rank), dtype=np.int64)
    for i, gi in enumerate(v1.lifts()):
        for j, hj in enumerate(v2.lifts()):
            vals[i, j] = w.coord_of(int(pw[comm[gi, hj], c % G.exponent()]))
    delta = BilinearDelta(v1, v2, w, vals)
    D_expected = pw[comm, c % G.exponent()]
    if not np.array_equal(delta.value_table(), D_expected):
        raise ShapeMismatch("commutator map is not bilinear on these sections")
    return delta


# -- enumeration -----------------------------------------------------------


def enumerate_deltas(G: GroupTable, aut_gens: list[np.ndarray], *,
                     central_aut_perms: list[np.ndarray] | None = None,
                     enumerate_cap: int = 10**5) -> list[BilinearDelta]:
    """All Aut-equivariant bilinear maps G/Z x G/G' -> Z(G).

    When a list of central automorphisms is supplied, the second factor
    is refined to G/(G' K) with K = <[G, alpha]> (see
    central_kernel_subgroup); this loses no solutions, because every
    Delta in the correspondence has a gamma killing K, and every
    refined solution pulls back.  If all three sections then have prime
    exponent, the equivariance constraints form an F_p linear system in
    the basis values and the full solution list is the kernel;
    otherwise a bounded exhaustive filter runs, or UnsupportedModuli.
    Every returned Delta is re-verified for equivariance at the value-
    table level against the given generators.
    """
    kernel_extra = None
    if central_aut_perms is not None and len(central_aut_perms):
        K = central_kernel_subgroup(G, central_aut_perms)
        if len(K) > 1:
            kernel_extra = K
    v1, v2, w = standard_spaces(G, kernel_extra=kernel_extra)

    all_mods = v1.moduli + v2.moduli + w.moduli
    solutions: list[np.ndarray] = []
    nvals = v1.rank * v2.rank * w.rank
    if nvals == 0:
        zero = np.zeros((v1.rank, v2.rank, w.rank), dtype=np.int64)
        return [BilinearDelta(v1, v2, w, zero)]

    p = G.prime()
    if all(m == p for m in all_mods):
        rows = []
        eye = np.eye(v1.rank * v2.rank, dtype=np.int64)
        for bp in aut_gens:
            m1 = v1.matrix_of(bp)
            m2 = v2.matrix_of(bp)
            mw = w.matrix_of(bp)
            lhs = np.kron(np.kron(m1, m2), np.eye(w.rank, dtype=np.int64))
            rhs = np.kron(eye, mw.T)
            rows.append((lhs - rhs) % p)
        A = np.vstack(rows) if rows else np.zeros((0, nvals), dtype=np.int64)
        basis = kernel_basis_fp(A, p)
        dim = len(basis)
        if p ** dim > enumerate_cap:
            raise UnsupportedModuli(
                f"solution space has {p}^{dim} elements, above the cap")
        combos = np.array(list(product(range(p), repeat=dim)), dtype=np.int64)
        raw = combos @ basis % p if dim else np.zeros((1, nvals), dtype=np.int64)
    else:
        raw = _mixed_candidates(v1, v2, w, aut_gens)

    out = []
    for flat in raw:
        vals = flat.reshape(v1.rank, v2.rank, w.rank)
        try:
            delta = BilinearDelta(v1, v2, w, vals)
        except ShapeMismatch:
            continue
        if all(delta.equivariant_under(np.asarray(bp)) for bp in aut_gens):
            out.append(delta)
    out.sort(key=lambda d: d.key())
    return out


def _mixed_candidates(v1: SectionSpace, v2: SectionSpace, w: SectionSpace,
                      aut_gens: list[np.ndarray]) -> np.ndarray:
    """Exhaustive candidate scan for sections with mixed exponents.

    Every basis-value array is generated (bounded by FALLBACK_LIMIT),
    the annihilator conditions cut the invalid ones, and equivariance
    is tested on basis pairs via the induced section matrices, which is
    equivalent to the value-table condition by bilinearity.  Survivors
    still pass through the honest table-level check in the caller.
    """
    r1, r2, rw = v1.rank, v2.rank, w.rank
    mods = np.array([w.moduli[t] for _ in range(r1 * r2) for t in range(rw)],
                    dtype=np.int64)
    total = int(np.prod(mods, dtype=np.int64))
    if total <= 0 or total > FALLBACK_LIMIT or total * len(mods) > 4 * 10**7:
        raise UnsupportedModuli(
            "mixed-exponent sections too large for exhaustive filtering")
    grid = np.arange(total, dtype=np.int64)
    cand = np.zeros((total, len(mods)), dtype=np.int64)
    for k in range(len(mods) - 1, -1, -1):
        cand[:, k] = grid % mods[k]
        grid //= mods[k]
    m1v = np.repeat(np.array(v1.moduli, dtype=np.int64), r2 * rw)
    m2v = np.tile(np.repeat(np.array(v2.moduli, dtype=np.int64), rw), r1)
    ok = ((cand * m1v % mods == 0) & (cand * m2v % mods == 0)).all(axis=1)
    cand = cand[ok]
    mw_vec = np.array(w.moduli, dtype=np.int64)
    vals = cand.reshape(-1, r1, r2, rw)
    for bp in aut_gens:
        M1 = v1.matrix_of(bp)
        M2 = v2.matrix_of(bp)
        MW = w.matrix_of(bp)
        lhs = np.einsum("ik,jl,cklt->cijt", M1, M2, vals) % mw_vec
        rhs = np.einsum("cijs,st->cijt", vals, MW) % mw_vec
        keep = (lhs == rhs).all(axis=(1, 2, 3))
        vals = vals[keep]
    return vals.reshape(-1, r1 * r2 * rw)


# -- the symmetric space on groups with Z(G) = G' = Frat(G) ---------------


def symmetric_delta_basis(n: int) -> list[np.ndarray]:
    """Basis of the symmetric bilinear maps V x V -> W for rank(V) = n,
    rank(W) = C(n, 2): one generator per (unordered pair, W-coordinate).
    """
    rw = comb(n, 2)
    basis = []
    for i in range(n):
        for j in range(i, n):
            for t in range(rw):
                v = np.zeros((n, n, rw), dtype=np.int64)
                v[i, j, t] = 1
                v[j, i, t] = 1
                basis.append(v)
    return basis


def symmetric_delta_space(G: GroupTable, auts) -> tuple[int, list[np.ndarray]]:
    """Dimension and basis of the symmetric Deltas on a verified group.

    Requires the special shape: Z(G) = G' = Frat(G), V = G/Z elementary
    abelian of rank n, W = Z elementary of rank C(n,2), and every
    automorphism central (which makes the equivariance constraint
    vacuous).  ``auts`` must be the full AutGroup; a partial list could
    fake the centrality check.
    """
    z = G.center()
    if not (np.array_equal(z, G.derived()) and np.array_equal(z, G.frattini())):
        raise ShapeMismatch("need Z(G) = G' = Frat(G)")
    p = G.prime()
    v1, v2, w = standard_spaces(G)
    n = v1.rank
    if v1.moduli != [p] * n or w.moduli != [p] * comb(n, 2):
        raise ShapeMismatch("sections are not elementary abelian of the right ranks")
    if not np.array_equal(v2.to_G, v1.to_G):
        raise ShapeMismatch("G/Z and G/G' do not coincide")
    central = auts.is_central_subset()
    if not central.all():
        raise HypothesisViolated(
            f"{int((~central).sum())} automorphisms are not central")
    basis = symmetric_delta_basis(n)
    flat = np.stack([b.ravel() for b in basis])
    R, pivots = rref_fp(flat, p)
    if len(pivots) != len(basis):
        raise InconsistentPresentation("symmetric basis is not independent")
    return len(basis), basis


def jc_from_deltas(G: GroupTable, aut_gens: list[np.ndarray],
                   *, central_aut_perms: np.ndarray | None = None,
                   enumerate_cap: int = 10**5) -> list:
    """J(G) reconstructed through the bilinear solution space.

    Every equivariant Delta is converted back to its gamma function
    (fully re-validated against the defining laws), the circle group is
    rebuilt and axiom-checked, and normality of the associated regular
    subgroup in Hol(G) is verified by explicit conjugation.  The output
    order follows the Delta coordinate keys, so it is deterministic.
    """
    from .holomorph import build_regular_subgroup, is_normal_in_hol

    deltas = enumerate_deltas(G, aut_gens,
                              central_aut_perms=central_aut_perms,
                              enumerate_cap=enumerate_cap)
    out = []
    for delta in deltas:
        gamma = gamma_from_delta(G, delta, aut_gens)
        rs = build_regular_subgroup(G, gamma)
        if not is_normal_in_hol(G, aut_gens, rs.nu):
            raise InconsistentPresentation(
                "delta solution produced a non-normal subgroup")
        rs.delta = delta
        out.append(rs)
    return out
