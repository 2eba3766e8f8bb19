"""Dense multiplication tables for small finite groups.

Everything downstream works on a GroupTable: a square numpy array with
element 0 as the identity, verified against the group axioms at build
time.  The composition convention is left-to-right throughout the
package, i.e. maps act on the right of their argument, so the product
``a*b`` of two permutations means "apply a, then b".
"""

from __future__ import annotations

import hashlib
from typing import Sequence

import numpy as np

from .errors import InconsistentPresentation, NotAGroup, NotNormal

__all__ = [
    "GroupTable",
    "compose",
    "idx_dtype",
    "abelian_basis",
    "abelian_invariants",
    "ASSOC_SCAN_LIMIT",
]

IDENTITY = 0

# Full associativity scans are quadratic in memory and cubic in time, so
# they are only run below this order; larger tables rely on the checks
# that remain cheap (identity, latin property, inverses).
ASSOC_SCAN_LIMIT = 3000


def idx_dtype(n: int):
    """Smallest signed integer dtype that can index n elements."""
    return np.int16 if n < 2**15 else np.int32


def compose(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Left-to-right composition of permutation arrays: apply p, then q."""
    return q[p]


class GroupTable:
    """A finite group given by its full multiplication table.

    table[a, b] is the product a*b.  Element 0 must be the identity.
    For groups built from presentations, ``exps`` holds the normal-form
    exponent row of each element and ``generators`` the element indices
    of a generating set.
    """

    def __init__(
        self,
        table: np.ndarray,
        *,
        name: str = "",
        generators: Sequence[int] | None = None,
        exps: np.ndarray | None = None,
        gen_names: Sequence[str] | None = None,
        presentation=None,
        verify: bool = True,
    ):
        table = np.asarray(table)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise NotAGroup("multiplication table must be square")
        self.n = int(table.shape[0])
        self.table = np.ascontiguousarray(table.astype(idx_dtype(self.n), copy=False))
        self.name = name or f"group{self.n}"
        self.generators = list(generators) if generators is not None else None
        self.exps = exps
        self.gen_names = list(gen_names) if gen_names is not None else None
        self.presentation = presentation
        self._cache: dict = {}
        if verify:
            self._verify_axioms()
        self.inv = self._inverses()

    # -- construction-time checks -------------------------------------

    def _verify_axioms(self) -> None:
        n, t = self.n, self.table
        if t.min() < 0 or t.max() >= n:
            raise NotAGroup("table entries out of range")
        ar = np.arange(n)
        if not (np.array_equal(t[IDENTITY], ar) and np.array_equal(t[:, IDENTITY], ar)):
            raise NotAGroup("element 0 is not a two-sided identity")
        if not (np.array_equal(np.sort(t, axis=1), np.broadcast_to(ar, t.shape))
                and np.array_equal(np.sort(t, axis=0), np.broadcast_to(ar[:, None], t.shape))):
            raise NotAGroup("table rows/columns are not permutations")
        if n <= ASSOC_SCAN_LIMIT:
            self._assoc_scan()

    def _assoc_scan(self) -> None:
        # (a*b)*c == a*(b*c) over every triple, in row blocks to bound memory.
        n, t = self.n, self.table
        blk = max(1, (32 << 20) // max(1, n * n * t.itemsize))
        for start in range(0, n, blk):
            rows = t[start:start + blk]
            lhs = t[rows]            # lhs[i,b,c] = t[rows[i,b], c]
            rhs = rows[:, t]         # rhs[i,b,c] = rows[i, t[b,c]]
            if not np.array_equal(lhs, rhs):
                raise NotAGroup("associativity fails")

    def _inverses(self) -> np.ndarray:
        inv = np.argmax(self.table == IDENTITY, axis=1).astype(self.table.dtype)
        if not np.array_equal(self.table[np.arange(self.n), inv],
                              np.zeros(self.n, dtype=self.table.dtype)):
            raise NotAGroup("some element has no inverse")
        return inv

    # -- scalar helpers ------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv_of(self, a: int) -> int:
        return int(self.inv[a])

    def conj(self, a: int, b: int) -> int:
        """b^{-1} a b."""
        return int(self.table[self.table[self.inv[b], a], b])

    def commutator(self, a: int, b: int) -> int:
        """a^{-1} b^{-1} a b."""
        return int(self.table[self.table[self.table[self.inv[a], self.inv[b]], a], b])

    def power(self, g: int, k: int) -> int:
        pt = self.pow_table()
        return int(pt[g, k % self.exponent()])

    def order_of(self, g: int) -> int:
        return int(self.orders()[g])

    # -- cached bulk structures ----------------------------------------

    def orders(self) -> np.ndarray:
        if "orders" not in self._cache:
            n = self.n
            orders = np.zeros(n, dtype=np.int64)
            acc = np.arange(n)
            k = 1
            while (orders == 0).any():
                hit = (acc == IDENTITY) & (orders == 0)
                orders[hit] = k
                if k > n:
                    raise NotAGroup("order computation did not terminate")
                acc = self.table[acc, np.arange(n)]
                k += 1
            self._cache["orders"] = orders
        return self._cache["orders"]

    def exponent(self) -> int:
        if "exponent" not in self._cache:
            exp = 1
            for o in np.unique(self.orders()):
                exp = int(np.lcm(exp, int(o)))
            self._cache["exponent"] = exp
        return self._cache["exponent"]

    def pow_table(self) -> np.ndarray:
        """POW[g, k] = g^k for 0 <= k <= exponent."""
        if "pow" not in self._cache:
            e = self.exponent()
            pt = np.zeros((self.n, e + 1), dtype=self.table.dtype)
            acc = np.zeros(self.n, dtype=self.table.dtype)
            ar = np.arange(self.n)
            for k in range(1, e + 1):
                acc = self.table[acc, ar]
                pt[:, k] = acc
            self._cache["pow"] = pt
        return self._cache["pow"]

    def power_map(self, d: int) -> np.ndarray:
        """The map g -> g^d as a permutation array (d coprime to exponent)."""
        d = d % self.exponent()
        perm = self.pow_table()[:, d]
        if len(np.unique(perm)) != self.n:
            raise NotAGroup(f"power map d={d} is not a bijection")
        return perm.copy()

    def commutator_table(self) -> np.ndarray:
        if "comm" not in self._cache:
            t, inv = self.table, self.inv
            ar = np.arange(self.n)
            c = t[inv[:, None], inv[None, :]]
            c = t[c, ar[:, None]]
            c = t[c, ar[None, :]]
            self._cache["comm"] = c
        return self._cache["comm"]

    def center(self) -> np.ndarray:
        if "center" not in self._cache:
            mask = (self.table == self.table.T).all(axis=1)
            self._cache["center"] = np.nonzero(mask)[0]
        return self._cache["center"]

    def is_abelian(self) -> bool:
        return len(self.center()) == self.n

    def derived(self) -> np.ndarray:
        if "derived" not in self._cache:
            vals = np.unique(self.commutator_table())
            self._cache["derived"] = self.subgroup_closure(vals)
        return self._cache["derived"]

    def prime(self) -> int:
        """The prime p for a p-group table; errors if the order is not a prime power."""
        if "prime" not in self._cache:
            n = self.n
            if n == 1:
                raise InconsistentPresentation("trivial group has no defining prime")
            p = 2
            while n % p:
                p += 1
            m = n
            while m % p == 0:
                m //= p
            if m != 1:
                raise InconsistentPresentation(f"order {self.n} is not a prime power")
            self._cache["prime"] = p
        return self._cache["prime"]

    def frattini(self) -> np.ndarray:
        """Frattini subgroup of a p-group, computed as G' G^p."""
        if "frattini" not in self._cache:
            p = self.prime()
            pth = np.unique(self.pow_table()[:, p])
            seeds = np.union1d(pth, self.derived())
            self._cache["frattini"] = self.subgroup_closure(seeds)
        return self._cache["frattini"]

    def is_class_le_two(self) -> bool:
        member = np.zeros(self.n, dtype=bool)
        member[self.center()] = True
        return bool(member[self.derived()].all())

    # -- subgroup machinery --------------------------------------------

    def subgroup_closure(self, seeds) -> np.ndarray:
        """Sorted element indices of the subgroup generated by ``seeds``."""
        cur = np.union1d(np.asarray(seeds, dtype=np.int64), [IDENTITY])
        while True:
            prods = np.unique(self.table[np.ix_(cur, cur)])
            if len(prods) == len(cur):
                return cur
            cur = prods

    def subgroup_table(self, indices) -> tuple["GroupTable", np.ndarray]:
        """Restrict the table to a subgroup; returns (table, embedding)."""
        embed = np.unique(np.asarray(indices, dtype=np.int64))
        if embed[0] != IDENTITY:
            raise NotAGroup("subgroup must contain the identity")
        pos = np.full(self.n, -1, dtype=np.int64)
        pos[embed] = np.arange(len(embed))
        block = pos[self.table[np.ix_(embed, embed)]]
        if block.min() < 0:
            raise NotAGroup("index set is not closed under multiplication")
        sub = GroupTable(block, name=f"{self.name}|sub{len(embed)}", verify=len(embed) <= ASSOC_SCAN_LIMIT)
        return sub, embed

    def is_normal(self, indices) -> bool:
        sub = np.asarray(indices, dtype=np.int64)
        member = np.zeros(self.n, dtype=bool)
        member[sub] = True
        conj = self.table[self.table[np.ix_(self.inv, sub)], np.arange(self.n)[:, None]]
        return bool(member[conj].all())

    def quotient(self, indices) -> tuple["GroupTable", np.ndarray]:
        """Quotient by a normal subgroup; returns (quotient, projection)."""
        sub = np.unique(np.asarray(indices, dtype=np.int64))
        if sub[0] != IDENTITY:
            raise NotAGroup("subgroup must contain the identity")
        if len(self.subgroup_closure(sub)) != len(sub):
            raise NotAGroup("index set is not a subgroup")
        if not self.is_normal(sub):
            raise NotNormal("subgroup is not normal")
        rep = self.table[np.ix_(sub, np.arange(self.n))].min(axis=0)
        reps = np.unique(rep)
        proj = np.searchsorted(reps, rep)
        qtable = proj[self.table[np.ix_(reps, reps)]]
        q = GroupTable(qtable, name=f"{self.name}/{len(sub)}")
        return q, proj

    def generating_set(self) -> list[int]:
        """A small generating set, greedily chosen; deterministic."""
        if self.generators:
            return list(self.generators)
        gens: list[int] = []
        span = np.array([IDENTITY])
        while len(span) < self.n:
            member = np.zeros(self.n, dtype=bool)
            member[span] = True
            g = int(np.argmin(member))
            gens.append(g)
            span = self.subgroup_closure(gens)
        return gens

    # -- misc -----------------------------------------------------------

    def canonical_hash(self) -> str:
        h = hashlib.sha256()
        h.update(str(self.n).encode())
        h.update(np.ascontiguousarray(self.table.astype(np.int64)).tobytes())
        return h.hexdigest()

    def element_name(self, g: int) -> str:
        if self.exps is None or self.gen_names is None:
            return str(g)
        if g == IDENTITY:
            return "1"
        parts = []
        for name, e in zip(self.gen_names, self.exps[g]):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{int(e)}")
        return " ".join(parts) if parts else "1"

    def __repr__(self) -> str:
        return f"GroupTable({self.name}, order={self.n})"


def _dlog(G: GroupTable, base: int, x: int) -> int:
    """Smallest k >= 0 with base^k = x; raises if x is outside <base>."""
    acc = IDENTITY
    for k in range(G.order_of(base) + 1):
        if acc == x:
            return k
        acc = G.mul(acc, base)
    raise NotAGroup("element not in cyclic subgroup")


def abelian_basis(G: GroupTable) -> tuple[list[int], list[int], np.ndarray]:
    """Basis of a finite abelian group table.

    Returns (basis, moduli, coords) with every element equal to the
    product of basis[i]^coords[g, i], moduli non-increasing, and the
    first basis element of maximal order.  In an abelian p-group an
    element of maximal order always generates a direct summand, which
    is what makes the greedy choice below correct.
    """
    if not G.is_abelian():
        raise NotAGroup("abelian_basis requires an abelian group")
    if G.n == 1:
        return [], [], np.zeros((1, 0), dtype=np.int64)
    orders = G.orders()
    b = int(np.argmax(orders))
    b = int(np.nonzero(orders == orders[b])[0][0])
    m = int(orders[b])
    cyc = G.subgroup_closure([b])
    Q, proj = G.quotient(cyc)
    qbasis, qmods, qcoords = abelian_basis(Q)
    basis = [b]
    moduli = [m]
    for qb, qm in zip(qbasis, qmods):
        pre = int(np.nonzero(proj == qb)[0][0])
        k = _dlog(G, b, G.power(pre, qm))
        if k % qm:
            raise NotAGroup("abelian basis lift failed")
        # adjust the lift so its order drops to the quotient order
        lift = G.mul(pre, G.power(b, (-(k // qm)) % m))
        basis.append(lift)
        moduli.append(qm)
    coords = np.zeros((G.n, len(basis)), dtype=np.int64)
    coords[:, 1:] = qcoords[proj]
    for g in range(G.n):
        rest = IDENTITY
        for bi, (be, me) in enumerate(zip(basis[1:], moduli[1:]), start=1):
            rest = G.mul(rest, G.power(be, int(coords[g, bi])))
        resid = G.mul(g, G.inv_of(rest))
        coords[g, 0] = _dlog(G, b, resid)
    return basis, moduli, coords


def abelian_invariants(G: GroupTable) -> list[int]:
    """Orders of a basis of an abelian group, non-increasing."""
    _, moduli, _ = abelian_basis(G)
    return moduli
