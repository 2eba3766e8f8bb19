"""Class-two presentations and their realization as multiplication tables.

A presentation lists generators g_1..g_m with relative orders r_i (all
powers of one odd prime), power words giving g_i^{r_i} in terms of later
generators, and central commutator words [g_j, g_i] for j > i.  Every
element then has a unique normal form g_1^{a_1} ... g_m^{a_m} with
0 <= a_i < r_i, and products collect by the class-two rule

    (prod g_i^{a_i}) (prod g_i^{b_i})
        = prod g_i^{a_i + b_i} * prod_{i<j} [g_j, g_i]^{a_j b_i}.

The collected table is verified in full (associativity scan, relation
checks, centrality of all relation words), so an inconsistent or
non-class-two presentation is rejected rather than silently misbuilt.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .errors import (
    InconsistentPresentation,
    OrderCapExceeded,
    UnsupportedPreset,
)
from .groups import GroupTable

__all__ = [
    "Word",
    "ClassTwoPresentation",
    "build_group",
    "preset",
    "central_power_presentation",
    "presentation_to_json",
    "presentation_from_json",
    "save_presentation",
    "load_presentation",
    "DEFAULT_ORDER_CAP",
]

# A word is a list of (generator index, exponent) pairs, read left to right.
Word = list[tuple[int, int]]

DEFAULT_ORDER_CAP = 3000


def _is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass
class ClassTwoPresentation:
    p: int
    rel_orders: list[int]
    powers: dict[int, Word] = field(default_factory=dict)
    commutators: dict[tuple[int, int], Word] = field(default_factory=dict)
    gen_names: list[str] | None = None
    essential: list[int] | None = None
    name: str = ""

    def __post_init__(self) -> None:
        m = len(self.rel_orders)
        if not _is_odd_prime(self.p):
            raise InconsistentPresentation(f"p={self.p} must be an odd prime")
        if m == 0:
            raise InconsistentPresentation("need at least one generator")
        for r in self.rel_orders:
            q = r
            while q % self.p == 0:
                q //= self.p
            if q != 1 or r < self.p:
                raise InconsistentPresentation(f"relative order {r} is not a power of {self.p}")
        for i, w in self.powers.items():
            if not 0 <= i < m:
                raise InconsistentPresentation(f"power relation for unknown generator {i}")
            for g, _ in w:
                if not i < g < m:
                    raise InconsistentPresentation(
                        f"power word of generator {i} may only use later generators, got {g}")
        for (j, i), w in self.commutators.items():
            if not (0 <= i < j < m):
                raise InconsistentPresentation(f"commutator key ({j},{i}) must have j > i")
            for g, _ in w:
                if not 0 <= g < m:
                    raise InconsistentPresentation(f"commutator word uses unknown generator {g}")
        if self.gen_names is None:
            self.gen_names = [f"g{i}" for i in range(m)]
        if len(self.gen_names) != m:
            raise InconsistentPresentation("one name per generator required")
        if self.essential is None:
            self.essential = list(range(m))

    @property
    def num_gens(self) -> int:
        return len(self.rel_orders)

    def order(self) -> int:
        n = 1
        for r in self.rel_orders:
            n *= r
        return n

    def word_vector(self, w: Word) -> np.ndarray:
        v = np.zeros(self.num_gens, dtype=np.int64)
        for g, e in w:
            v[g] += e
        return v


def build_group(pres: ClassTwoPresentation, cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Collect a presentation into a fully verified GroupTable."""
    n = pres.order()
    if n > cap:
        raise OrderCapExceeded(f"order {n} exceeds cap {cap}")
    m = pres.num_gens
    r = np.array(pres.rel_orders, dtype=np.int64)
    strides = np.ones(m, dtype=np.int64)
    for i in range(m - 2, -1, -1):
        strides[i] = strides[i + 1] * r[i + 1]
    exps = (np.arange(n)[:, None] // strides[None, :]) % r[None, :]

    pw = {i: pres.word_vector(w) for i, w in pres.powers.items() if w}
    cw = {k: pres.word_vector(w) for k, w in pres.commutators.items() if w}

    t = exps[:, None, :] + exps[None, :, :]
    for (j, i), vec in cw.items():
        t = t + np.multiply.outer(exps[:, j], exps[:, i])[:, :, None] * vec
    for i in range(m):
        q, rem = np.divmod(t[:, :, i], r[i])
        t[:, :, i] = rem
        if i in pw and q.any():
            t = t + q[:, :, None] * pw[i]
    table = (t @ strides).astype(np.int64)

    G = GroupTable(
        table,
        name=pres.name or f"pres{n}",
        generators=[int(strides[i]) for i in pres.essential],
        exps=exps,
        gen_names=pres.gen_names,
        presentation=pres,
    )
    _check_relations(pres, G, strides)
    if len(G.subgroup_closure(G.generators)) != n:
        raise InconsistentPresentation("declared essential generators do not generate")
    if not G.is_class_le_two():
        raise InconsistentPresentation("presentation is not of class at most two")
    return G


def _eval_word(G: GroupTable, gen_elems: list[int], w: Word) -> int:
    acc = 0
    for g, e in w:
        x = gen_elems[g]
        e %= G.order_of(x)
        acc = G.mul(acc, G.power(x, e))
    return acc


def _check_relations(pres: ClassTwoPresentation, G: GroupTable, strides: np.ndarray) -> None:
    gen_elems = [int(s) for s in strides]
    central = set(int(z) for z in G.center())
    for i, ri in enumerate(pres.rel_orders):
        want = _eval_word(G, gen_elems, pres.powers.get(i, []))
        got = G.power(gen_elems[i], ri)
        if got != want:
            raise InconsistentPresentation(f"power relation of generator {i} fails in table")
        if pres.powers.get(i) and want not in central:
            raise InconsistentPresentation(f"power word of generator {i} is not central")
    for j in range(pres.num_gens):
        for i in range(j):
            want = _eval_word(G, gen_elems, pres.commutators.get((j, i), []))
            got = G.commutator(gen_elems[j], gen_elems[i])
            if got != want:
                raise InconsistentPresentation(f"commutator relation [{j},{i}] fails in table")
            if want not in central:
                raise InconsistentPresentation(f"commutator word [{j},{i}] is not central")


# -- presets -----------------------------------------------------------


def preset(name: str, p: int | None = None, n: int | None = None,
           factors: list[int] | None = None, cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Build one of the named families.

    gp(p):   <x,y : x^(p^2), y^(p^2), [x,y] = x^p>, order p^4
    hp(p):   <x,y : x^(p^2), y^p,     [x,y] = x^p>, order p^3
    free_c2_exp_p(p, n): free class-two exponent-p group on n generators,
             with the commutators [x_j, x_k] carried as explicit central
             generators c_jk; order p^(n + n(n-1)/2)
    abelian(factors): direct product of cyclic p-groups
    """
    if name == "gp":
        if not p:
            raise UnsupportedPreset("gp needs p")
        pres = ClassTwoPresentation(
            p=p,
            rel_orders=[p * p, p * p],
            commutators={(1, 0): [(0, -p)]},
            gen_names=["x", "y"],
            name=f"gp({p})",
        )
        return build_group(pres, cap=cap)
    if name == "hp":
        if not p:
            raise UnsupportedPreset("hp needs p")
        pres = ClassTwoPresentation(
            p=p,
            rel_orders=[p * p, p],
            commutators={(1, 0): [(0, -p)]},
            gen_names=["x", "y"],
            name=f"hp({p})",
        )
        return build_group(pres, cap=cap)
    if name == "free_c2_exp_p":
        if not p or not n or n < 2:
            raise UnsupportedPreset("free_c2_exp_p needs p and n >= 2")
        return build_group(_free_presentation(p, n), cap=cap)
    if name == "abelian":
        if not factors:
            raise UnsupportedPreset("abelian needs an invariant factor list")
        q = factors[0]
        pp = 2
        while q % pp:
            pp += 1
        pres = ClassTwoPresentation(
            p=pp,
            rel_orders=list(factors),
            gen_names=[f"a{i+1}" for i in range(len(factors))] if len(factors) > 1 else ["a"],
            name="abelian(" + "x".join(str(f) for f in factors) + ")",
        )
        return build_group(pres, cap=cap)
    raise UnsupportedPreset(f"unknown preset {name!r}")


def _free_presentation(p: int, n: int) -> ClassTwoPresentation:
    pairs = [(j, k) for j in range(n) for k in range(j + 1, n)]
    m = n + len(pairs)
    cidx = {jk: n + t for t, jk in enumerate(pairs)}
    names = [f"x{i+1}" for i in range(n)] + [f"c{j+1}{k+1}" for j, k in pairs]
    comms: dict[tuple[int, int], Word] = {}
    for (j, k), c in cidx.items():
        # c_jk stands for [x_j, x_k] with j < k, so [g_k, g_j] = c_jk^(-1)
        comms[(k, j)] = [(c, -1)]
    return ClassTwoPresentation(
        p=p,
        rel_orders=[p] * m,
        commutators=comms,
        gen_names=names,
        essential=list(range(n)),
        name=f"free_c2_exp_p(n={n},p={p})",
    )


def central_power_presentation(p: int, n: int, phi_rows) -> ClassTwoPresentation:
    """Class-two group with x_i^p prescribed inside the commutator subgroup.

    phi_rows is an n x (n choose 2) integer matrix over F_p; row i gives
    the exponents of x_i^p on the central generators c_jk (ordered
    c_12, c_13, ..., c_23, ...).  phi_rows = 0 recovers the free
    class-two exponent-p group.
    """
    phi = np.asarray(phi_rows, dtype=np.int64) % p
    if phi.shape != (n, comb(n, 2)):
        raise InconsistentPresentation(f"phi must be {n} x {comb(n, 2)}")
    pres = _free_presentation(p, n)
    for i in range(n):
        w = [(n + t, int(phi[i, t])) for t in range(comb(n, 2)) if phi[i, t]]
        if w:
            pres.powers[i] = w
    pres.name = f"central_power(n={n},p={p})"
    return ClassTwoPresentation(
        p=pres.p, rel_orders=pres.rel_orders, powers=pres.powers,
        commutators=pres.commutators, gen_names=pres.gen_names,
        essential=pres.essential, name=pres.name,
    )


# -- JSON form ---------------------------------------------------------


def presentation_to_json(pres: ClassTwoPresentation) -> dict:
    out: dict = {
        "p": pres.p,
        "orders": list(pres.rel_orders),
        "powers": {str(i): [[int(g), int(e)] for g, e in w] for i, w in sorted(pres.powers.items())},
        "commutators": {f"{j},{i}": [[int(g), int(e)] for g, e in w]
                        for (j, i), w in sorted(pres.commutators.items())},
    }
    if pres.gen_names != [f"g{i}" for i in range(pres.num_gens)]:
        out["names"] = list(pres.gen_names)
    if pres.essential != list(range(pres.num_gens)):
        out["essential"] = list(pres.essential)
    return out


def presentation_from_json(data: dict) -> ClassTwoPresentation:
    try:
        powers = {int(i): [(int(g), int(e)) for g, e in w] for i, w in data.get("powers", {}).items()}
        comms = {}
        for key, w in data.get("commutators", {}).items():
            j, i = (int(s) for s in key.split(","))
            comms[(j, i)] = [(int(g), int(e)) for g, e in w]
        return ClassTwoPresentation(
            p=int(data["p"]),
            rel_orders=[int(r) for r in data["orders"]],
            powers=powers,
            commutators=comms,
            gen_names=data.get("names"),
            essential=data.get("essential"),
            name=data.get("name", ""),
        )
    except (KeyError, ValueError, TypeError) as exc:
        raise InconsistentPresentation(f"bad presentation data: {exc}") from exc


def save_presentation(pres: ClassTwoPresentation, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(presentation_to_json(pres), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_presentation(path: str) -> ClassTwoPresentation:
    with open(path) as fh:
        return presentation_from_json(json.load(fh))
