"""Automorphism groups and isomorphism searches by generator-image backtracking.

The search enumerates candidate images for the essential generators in
ascending element order, level by level, pruning by (i) element order,
(ii) every presentation relation whose generators are all placed, and
(iii) independence modulo the Frattini subgroup of the target.  A full
tuple passing all relation checks extends to a homomorphism (the source
table realizes exactly its presentation), so only bijectivity remains
to be confirmed on the built permutation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    InconsistentPresentation,
    SearchBudgetExceeded,
)
from .groups import GroupTable, abelian_basis, compose, idx_dtype

__all__ = [
    "AutGroup",
    "automorphism_group",
    "isomorphism_search",
    "hom_from_gen_images",
    "hom_or_none",
    "table_isomorphism",
    "free_aut_generators",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10**8


def perm_key(perm: np.ndarray) -> bytes:
    return np.ascontiguousarray(perm, dtype=np.int32).tobytes()


def perm_order(perm: np.ndarray) -> int:
    n = len(perm)
    seen = np.zeros(n, dtype=bool)
    order = 1
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        g = start
        while not seen[g]:
            seen[g] = True
            g = int(perm[g])
            length += 1
        order = int(np.lcm(order, length))
    return order


class AutGroup:
    """The full automorphism group of a table, as permutation rows."""

    def __init__(self, group: GroupTable, perms: np.ndarray):
        self.group = group
        order = np.lexsort(perms.T[::-1])
        self.perms = np.ascontiguousarray(perms[order])
        self.size = len(self.perms)
        self._index = {perm_key(p): i for i, p in enumerate(self.perms)}
        if len(self._index) != self.size:
            raise InconsistentPresentation("duplicate automorphisms")
        self._cache: dict = {}
        self.identity = self.index_of(np.arange(group.n))
        self.inv_idx = np.empty(self.size, dtype=np.int64)
        for i, p in enumerate(self.perms):
            j = self._index.get(perm_key(np.argsort(p)))
            if j is None:
                raise InconsistentPresentation("automorphism list not inverse-closed")
            self.inv_idx[i] = j

    def index_of(self, perm: np.ndarray) -> int | None:
        return self._index.get(perm_key(perm))

    def compose_idx(self, i: int, j: int) -> int | None:
        """Index of the product: apply i, then j."""
        return self.index_of(compose(self.perms[i], self.perms[j]))

    def conj_idx(self, a: int, b: int) -> int | None:
        """Index of b^{-1} a b."""
        p = compose(self.perms[self.inv_idx[b]], compose(self.perms[a], self.perms[b]))
        return self.index_of(p)

    def closure_of(self, gen_idx: list[int]) -> np.ndarray:
        """Indices of the subgroup generated by the given automorphisms."""
        known = {int(self.identity)}
        frontier = [int(self.identity)]
        while frontier:
            nxt = []
            for f in frontier:
                for g in gen_idx:
                    h = self.compose_idx(f, g)
                    if h is None:
                        raise InconsistentPresentation("automorphism set not closed")
                    if h not in known:
                        known.add(h)
                        nxt.append(h)
            frontier = nxt
        return np.array(sorted(known), dtype=np.int64)

    def subgroup_generators(self, members: np.ndarray) -> list[int]:
        """Small generating set (by index) for a subgroup given by member indices."""
        members = set(int(v) for v in members)
        gens: list[int] = []
        spanned = {int(self.identity)}
        for cand in sorted(members):
            if cand in spanned:
                continue
            gens.append(cand)
            spanned = set(int(v) for v in self.closure_of(gens))
        if spanned != members:
            raise InconsistentPresentation("member set is not a subgroup")
        return gens

    def generating_set(self) -> list[int]:
        if "gens" not in self._cache:
            self._cache["gens"] = self.subgroup_generators(np.arange(self.size))
        return self._cache["gens"]

    def gen_perms(self) -> list[np.ndarray]:
        return [self.perms[i] for i in self.generating_set()]

    def stabilizer_gens(self, elem: int) -> list[int]:
        members = np.nonzero(self.perms[:, elem] == elem)[0]
        return self.subgroup_generators(members)

    def power_divides(self, k: int) -> np.ndarray:
        """Boolean mask of automorphisms a with a^k = identity."""
        n = self.group.n
        acc = np.tile(np.arange(n, dtype=self.perms.dtype), (self.size, 1))
        base = self.perms
        e = k
        while e:
            if e & 1:
                acc = np.take_along_axis(base, acc, axis=1)
            e >>= 1
            if e:
                base = np.take_along_axis(base, base, axis=1)
        return (acc == np.arange(n)).all(axis=1)

    def is_central_subset(self) -> np.ndarray:
        """Mask of automorphisms moving every element within its center coset."""
        G = self.group
        zmask = np.zeros(G.n, dtype=bool)
        zmask[G.center()] = True
        moved = G.table[G.inv[None, :], self.perms]  # g^{-1} * g^alpha
        return zmask[moved].all(axis=1)


# -- relation checklists ----------------------------------------------


@dataclass
class _Check:
    level: int
    lhs: list
    rhs: list


def _compile_checks(pres) -> tuple[list[_Check], dict]:
    """Translate all relations into token lists over essential generators.

    Tokens: ('g', src_gen, exp) for a power of a placed image and
    ('c', j, i, exp) for a power of the commutator [img_j, img_i] of two
    placed essential images.  Non-essential generators must be defined
    by a commutator relation [g_j, g_i] = c^(+-1) with j, i essential.
    """
    ess = pres.essential
    ess_pos = {g: t for t, g in enumerate(ess)}
    m = pres.num_gens
    defn: dict[int, tuple[int, int, int]] = {}
    for (j, i), w in pres.commutators.items():
        if j in ess_pos and i in ess_pos and len(w) == 1:
            c, e = w[0]
            if c not in ess_pos and abs(e) == 1 and c not in defn:
                defn[c] = (j, i, e)
    for g in range(m):
        if g not in ess_pos and g not in defn:
            raise InconsistentPresentation(
                f"generator {g} is neither essential nor defined by a commutator")

    def tokens(word, extra_exp=1):
        toks = []
        for g, e in word:
            e *= extra_exp
            if g in ess_pos:
                toks.append(("g", g, e))
            else:
                j, i, s = defn[g]
                toks.append(("c", j, i, s * e))
        return toks

    def level_of(toks) -> int:
        lv = 0
        for t in toks:
            if t[0] == "g":
                lv = max(lv, ess_pos[t[1]])
            else:
                lv = max(lv, ess_pos[t[1]], ess_pos[t[2]])
        return lv

    checks: list[_Check] = []
    for i in range(m):
        lhs = tokens([(i, pres.rel_orders[i])])
        rhs = tokens(pres.powers.get(i, []))
        checks.append(_Check(level_of(lhs + rhs), lhs, rhs))
    for j in range(m):
        for i in range(j):
            lhs_j = tokens([(j, 1)])
            lhs_i = tokens([(i, 1)])
            if len(lhs_j) != 1 or len(lhs_i) != 1:
                raise InconsistentPresentation("unexpandable commutator operand")
            lhs = [("k", lhs_j[0], lhs_i[0])]
            rhs = tokens(pres.commutators.get((j, i), []))
            lv = max(level_of(lhs_j + lhs_i), level_of(rhs))
            checks.append(_Check(lv, lhs, rhs))
    return checks, ess_pos


def _token_value(tok, images, dst: GroupTable, pow_t, comm_t):
    """Element (scalar or candidate vector) a single token evaluates to."""
    kind = tok[0]
    if kind == "g":
        _, g, e = tok
        base = images[g]
        return pow_t[base, e % dst.exponent()]
    if kind == "c":
        _, j, i, e = tok
        c = comm_t[images[j], images[i]]
        return pow_t[c, e % dst.exponent()]
    # commutator of two resolved tokens
    _, tj, ti = tok
    a = _token_value(tj, images, dst, pow_t, comm_t)
    b = _token_value(ti, images, dst, pow_t, comm_t)
    return comm_t[a, b]


def _eval_tokens(toks, images, dst: GroupTable, pow_t, comm_t):
    acc = 0
    for tok in toks:
        acc = dst.table[acc, _token_value(tok, images, dst, pow_t, comm_t)]
    return acc


def hom_from_gen_images(src: GroupTable, dst: GroupTable, images: dict[int, int]) -> np.ndarray:
    """Map every src element through generator images, by its normal form.

    ``images`` maps every presentation generator (essential or derived)
    to a dst element.  Returns the image array; multiplicativity is
    exactly von Dyck's condition and is not rechecked here.
    """
    pres = src.presentation
    if pres is None or src.exps is None:
        raise InconsistentPresentation("source group carries no presentation")
    pow_t = dst.pow_table()
    res = np.zeros(src.n, dtype=dst.table.dtype)
    for i in range(pres.num_gens):
        col = pow_t[images[i], src.exps[:, i] % dst.exponent()]
        res = dst.table[res, col]
    return res


def _resolve_images(pres, ess_images, dst: GroupTable, comm_t) -> dict[int, int]:
    ess_pos = {g: t for t, g in enumerate(pres.essential)}
    images = {g: int(ess_images[t]) for g, t in ess_pos.items()}
    for (j, i), w in pres.commutators.items():
        if j in images and i in images and len(w) == 1:
            c, e = w[0]
            if c not in ess_pos and abs(e) == 1 and c not in images:
                val = int(comm_t[images[j], images[i]])
                images[c] = val if e == 1 else int(dst.inv[val])
    for g in range(pres.num_gens):
        if g not in images:
            raise InconsistentPresentation(f"cannot derive image of generator {g}")
    return images


def hom_or_none(src: GroupTable, dst: GroupTable, ess_images) -> np.ndarray | None:
    """Full image array if the essential images satisfy every relation, else None."""
    pres = src.presentation
    checks, _ = _compile_checks(pres)
    pow_t, comm_t = dst.pow_table(), dst.commutator_table()
    images = _resolve_images(pres, ess_images, dst, comm_t)
    img_vec = {g: np.int64(v) for g, v in images.items()}
    for chk in checks:
        if _eval_tokens(chk.lhs, img_vec, dst, pow_t, comm_t) != \
           _eval_tokens(chk.rhs, img_vec, dst, pow_t, comm_t):
            return None
    return hom_from_gen_images(src, dst, images)


# -- the search --------------------------------------------------------


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, k: int) -> None:
        self.used += k
        if self.used > self.limit:
            raise SearchBudgetExceeded(f"search exceeded {self.limit} propagation steps")


def _order_profile(G: GroupTable):
    vals, counts = np.unique(G.orders(), return_counts=True)
    return list(zip(vals.tolist(), counts.tolist()))


def _gen_image_search(src: GroupTable, dst: GroupTable, *, find_all: bool,
                      budget: int) -> list[np.ndarray]:
    pres = src.presentation
    if pres is None:
        raise InconsistentPresentation("search requires a presented source group")
    if src.n != dst.n or _order_profile(src) != _order_profile(dst):
        return []
    checks, ess_pos = _compile_checks(pres)
    ess = pres.essential
    k = len(ess)
    by_level: list[list[_Check]] = [[] for _ in range(k)]
    for chk in checks:
        by_level[chk.level].append(chk)

    pow_t, comm_t = dst.pow_table(), dst.commutator_table()
    dst_orders = dst.orders()
    frat = dst.frattini()
    fq, fproj = dst.quotient(frat)
    gen_orders = [src.order_of(src.generators[t]) for t in range(k)]
    level_cands = [np.nonzero(dst_orders == o)[0] for o in gen_orders]

    bud = _Budget(budget)
    found: list[np.ndarray] = []

    def rec(level: int, images: dict[int, np.int64], span: list[int]) -> bool:
        if level == k:
            full = _resolve_images(pres, [images[g] for g in ess], dst, comm_t)
            perm = hom_from_gen_images(src, dst, full)
            bud.spend(src.n)
            if len(np.unique(perm)) == src.n:
                found.append(perm)
                return not find_all
            return False
        cands = level_cands[level]
        bud.spend(len(cands))
        spanned = fq.subgroup_closure(span) if span else np.array([0])
        inspan = np.zeros(fq.n, dtype=bool)
        inspan[spanned] = True
        mask = ~inspan[fproj[cands]]
        vec = dict(images)
        vec[ess[level]] = cands
        for chk in by_level[level]:
            lhs = _eval_tokens(chk.lhs, vec, dst, pow_t, comm_t)
            rhs = _eval_tokens(chk.rhs, vec, dst, pow_t, comm_t)
            mask &= np.broadcast_to(lhs == rhs, mask.shape)
        for v in cands[mask]:
            nxt = dict(images)
            nxt[ess[level]] = np.int64(v)
            if rec(level + 1, nxt, span + [int(fproj[v])]):
                return True
        return False

    rec(0, {}, [])
    return found


def automorphism_group(G: GroupTable, budget: int = DEFAULT_BUDGET) -> AutGroup:
    """All automorphisms of a presented group, as a verified AutGroup."""
    perms = _gen_image_search(G, G, find_all=True, budget=budget)
    if not perms:
        raise InconsistentPresentation("automorphism search found nothing, not even identity")
    return AutGroup(G, np.array(perms))


def isomorphism_search(src: GroupTable, dst: GroupTable,
                       budget: int = DEFAULT_BUDGET) -> np.ndarray | None:
    """First isomorphism src -> dst in deterministic search order, or None.

    The search order is ascending element index at every level, so a
    repeated call returns the same map.  ``None`` means the exhaustive
    backtracking closed without a hit: the groups are not isomorphic.
    """
    res = _gen_image_search(src, dst, find_all=False, budget=budget)
    return res[0] if res else None


def table_isomorphism(A: GroupTable, B: GroupTable,
                      budget: int = DEFAULT_BUDGET) -> np.ndarray | None:
    """Isomorphism between two small bare tables, or None.

    Backtracks over images of a generating sequence of A, propagating
    the partial map through products and rejecting on conflict.  Meant
    for small groups (the transporter quotients); cost grows quickly.
    """
    if A.n != B.n or _order_profile(A) != _order_profile(B):
        return None
    gens = A.generating_set()
    if not gens:
        return np.zeros(1, dtype=np.int64) if B.n == 1 else None
    bud = _Budget(budget)
    b_orders = B.orders()

    def extend(img: np.ndarray, frontier: list[int]) -> np.ndarray | None:
        img = img.copy()
        while frontier:
            nxt = []
            for a in frontier:
                for g, gi in pairs:
                    t = int(A.table[a, g])
                    ti = int(B.table[img[a], gi])
                    if img[t] < 0:
                        img[t] = ti
                        nxt.append(t)
                    elif img[t] != ti:
                        return None
            bud.spend(len(frontier))
            frontier = nxt
        return img

    def rec(level: int, img: np.ndarray) -> np.ndarray | None:
        if level == len(gens):
            if len(np.unique(img)) != A.n:
                return None
            lhs = B.table[img[:, None], img[None, :]]
            return img if np.array_equal(img[A.table], lhs) else None
        a = gens[level]
        bud.spend(B.n)
        for b in np.nonzero(b_orders == A.order_of(a))[0]:
            trial = img.copy()
            if trial[a] < 0:
                trial[a] = b
            elif trial[a] != b:
                continue
            pairs.append((a, int(trial[a])))
            filled = extend(trial, [x for x in range(A.n) if trial[x] >= 0])
            if filled is not None:
                res = rec(level + 1, filled)
                if res is not None:
                    return res
            pairs.pop()
        return None

    pairs: list[tuple[int, int]] = []
    start = np.full(A.n, -1, dtype=np.int64)
    start[0] = 0
    return rec(0, start)


# -- structural generators for the free class-two exponent-p groups ----


def free_aut_generators(G: GroupTable) -> list[np.ndarray]:
    """A verified generating set of Aut for a free class-two exponent-p group.

    Freeness in the variety means any map of the n generators extends to
    an endomorphism, so Aut is generated by lifts of GL(n,p) generators
    (diagonal, transvection, cycle) together with the central twists
    x_i -> x_i z over a basis of the centre.  Each candidate is still
    verified against every relation before being accepted.
    """
    pres = G.presentation
    if pres is None or not pres.name.startswith("free_c2_exp_p"):
        raise InconsistentPresentation("structural generators only exist for the free preset")
    p = pres.p
    n = len(pres.essential)
    xs = [G.generators[i] for i in range(n)]
    zeta = _primitive_root(p)
    cands: list[list[int]] = []
    imgs = list(xs)
    imgs[0] = G.power(xs[0], zeta)
    cands.append(imgs)
    if n >= 2:
        imgs = list(xs)
        imgs[0] = G.mul(xs[0], xs[1])
        cands.append(imgs)
        cands.append([xs[(i + 1) % n] for i in range(n)])
    zsub, zembed = G.subgroup_table(G.center())
    zbasis, _, _ = abelian_basis(zsub)
    for i in range(n):
        for zb in zbasis:
            imgs = list(xs)
            imgs[i] = G.mul(xs[i], int(zembed[zb]))
            cands.append(imgs)
    out = []
    for imgs in cands:
        perm = hom_or_none(G, G, imgs)
        if perm is None or len(np.unique(perm)) != G.n:
            raise InconsistentPresentation("structural generator failed verification")
        out.append(perm.astype(idx_dtype(G.n)))
    return out


def _primitive_root(p: int) -> int:
    for g in range(2, p):
        seen = set()
        acc = 1
        for _ in range(p - 1):
            acc = acc * g % p
            seen.add(acc)
        if len(seen) == p - 1:
            return g
    raise ValueError(f"no primitive root for {p}")
