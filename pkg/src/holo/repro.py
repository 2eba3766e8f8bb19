"""Expected-values harness for the headline computations.

Every number the library is supposed to reproduce lives here in a versioned
manifest: one entry per check, carrying a claim in words and the exact
expected value.  ``run_suite`` recomputes the values from scratch through the
public pipeline (no tolerances, no sampling) and ``verify`` raises
``MismatchFound`` describing every disagreement.

Suites:

  gp             two-generator presentations of order p^4, p in {3, 5}
  hp             two-generator presentations of order p^3, p in {3, 5},
                 plus p = 7 when opted in
  free           free class-two exponent-p groups: (n, p) = (2, 3), (2, 5)
                 through the full pipeline and (3, 3) through the bilinear
                 solution space only
  powers         the power-map subgroup of T(G) on every preset
  big-delta-dim  dimension of the symmetric bilinear solution spaces for
                 rank 4 and rank 5
  abelian        |T(G)| = 1 for the abelian spot checks

Reports are deterministic: canonical JSON with sorted keys and no
timestamps.  Wall-clock figures are collected but only included when
explicitly requested, since they would break byte-identity between runs.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass

import numpy as np

from .automorphisms import AutGroup, free_aut_generators
from .cache import get_auts
from .deltas import (
    commutator_delta,
    delta_from_gamma,
    jc_from_deltas,
    rref_fp,
    symmetric_delta_basis,
)
from .errors import MismatchFound
from .groups import GroupTable
from .holomorph import RegularSubgroup, _central_aut_indices, hc_set, jc_set
from .presentations import preset
from .tgroup import (
    analyze,
    build_t_group,
    power_theta_family,
    theta_two_param_family,
)

__all__ = [
    "MANIFEST_VERSION",
    "SUITES",
    "ReproCheck",
    "run_suite",
    "run_all",
    "report",
    "report_json",
    "verify",
]

MANIFEST_VERSION = "1"

SUITES = ("gp", "hp", "free", "powers", "big-delta-dim", "abelian")

# Presets covered by the powers suite: (label, builder kwargs, family size).
# The family size is Euler's phi of the exponent of G over its center.
_POWER_GRID = (
    ("gp-3", {"name": "gp", "p": 3}, 2),
    ("gp-5", {"name": "gp", "p": 5}, 4),
    ("hp-3", {"name": "hp", "p": 3}, 2),
    ("hp-5", {"name": "hp", "p": 5}, 4),
    ("free-2-3", {"name": "free_c2_exp_p", "p": 3, "n": 2}, 2),
    ("free-2-5", {"name": "free_c2_exp_p", "p": 5, "n": 2}, 4),
    ("free-3-3", {"name": "free_c2_exp_p", "p": 3, "n": 3}, 2),
    ("c9", {"name": "abelian", "factors": [9]}, 1),
    ("c25", {"name": "abelian", "factors": [25]}, 1),
    ("c27", {"name": "abelian", "factors": [27]}, 1),
    ("c3x3", {"name": "abelian", "factors": [3, 3]}, 1),
)
_POWER_GRID_P7 = (("hp-7", {"name": "hp", "p": 7}, 6),)


@dataclass
class ReproCheck:
    suite: str
    check_id: str
    claim: str
    expected: object
    computed: object
    seconds: float = 0.0

    @property
    def match(self) -> bool:
        return self.expected == self.computed


class _Runs:
    """Per-invocation memo so shared groups are built and analyzed once."""

    def __init__(self, cache_dir=None, budget: int = 10 ** 8):
        self.cache_dir = cache_dir
        self.budget = budget
        self._memo: dict = {}

    def group(self, **kw) -> GroupTable:
        key = ("group", tuple(sorted((k, str(v)) for k, v in kw.items())))
        if key not in self._memo:
            self._memo[key] = preset(**kw)
        return self._memo[key]

    def auts(self, G: GroupTable) -> AutGroup:
        key = ("auts", G.canonical_hash())
        if key not in self._memo:
            self._memo[key] = get_auts(G, self.cache_dir, budget=self.budget)
        return self._memo[key]

    def full(self, **kw) -> dict:
        """Both J enumerations, H, T and the T-report for one preset."""
        key = ("full", tuple(sorted((k, str(v)) for k, v in kw.items())))
        if key not in self._memo:
            G = self.group(**kw)
            auts = self.auts(G)
            gens = [auts.perms[i] for i in auts.generating_set()]
            jc = jc_set(G, auts, self.budget)
            jd = jc_from_deltas(
                G, gens,
                central_aut_perms=auts.perms[_central_aut_indices(auts)])
            hc = hc_set(G, jd, self.budget)
            tg = build_t_group(G, hc, gens)
            rep = analyze(tg, G.prime())
            self._memo[key] = {
                "G": G, "auts": auts, "gens": gens, "jc": jc, "jd": jd,
                "hc": hc, "tg": tg, "report": rep,
            }
        return self._memo[key]

    def free_delta(self, p: int, n: int) -> dict:
        key = ("free-delta", p, n)
        if key not in self._memo:
            G = self.group(name="free_c2_exp_p", p=p, n=n)
            gens = free_aut_generators(G)
            jd = jc_from_deltas(G, gens)
            hc = hc_set(G, jd, self.budget)
            tg = build_t_group(G, hc, gens)
            self._memo[key] = {"G": G, "gens": gens, "jd": jd, "hc": hc,
                               "tg": tg, "report": analyze(tg, G.prime())}
        return self._memo[key]


def _commutator_multiple(G: GroupTable, rs: RegularSubgroup) -> int | None:
    """The c with Delta_rs = c * (commutator map), or None."""
    delta = rs.delta if rs.delta is not None else delta_from_gamma(G, rs.gamma)
    for c in range(G.prime()):
        if delta.key() == commutator_delta(G, c).key():
            return c
    return None


def _check(out: list[ReproCheck], suite: str, check_id: str, claim: str,
           expected, compute) -> None:
    t0 = time.perf_counter()
    computed = compute()
    out.append(ReproCheck(suite, check_id, claim, expected, computed,
                          time.perf_counter() - t0))


def _gp_suite(runs: _Runs, include_p7: bool) -> list[ReproCheck]:
    # p = 7 stays out of this suite: listing the automorphisms of the
    # order-2401 member exceeds any reasonable search budget here.
    out: list[ReproCheck] = []
    for p in (3, 5):
        pipe = runs.full(name="gp", p=p)
        base = f"the order-{p}^4 two-generator group"
        _check(out, "gp", f"p{p}-jc-count",
               f"|J| = p^2 regular subgroups normal in the holomorph for {base}.",
               p * p, lambda pipe=pipe: len(pipe["jd"]))
        _check(out, "gp", f"p{p}-jc-agreement",
               f"Direct gamma enumeration and the bilinear solution space give the same J for {base}.",
               True, lambda pipe=pipe: {r.key for r in pipe["jc"]} == {r.key for r in pipe["jd"]})
        _check(out, "gp", f"p{p}-hc-count",
               f"|H| = p(p-1) members of J are isomorphic to {base}.",
               p * (p - 1), lambda pipe=pipe: len(pipe["hc"]))
        _check(out, "gp", f"p{p}-t-order",
               f"T = (normalizer of the right translations)/(holomorph) has order p(p-1) for {base}.",
               p * (p - 1), lambda pipe=pipe: pipe["tg"].order)
        _check(out, "gp", f"p{p}-t-nonabelian",
               f"T is nonabelian for {base}.",
               True, lambda pipe=pipe: not pipe["report"].abelian)
        _check(out, "gp", f"p{p}-t-agl1",
               f"T is isomorphic to the affine group of the line over F_{p} for {base}.",
               True, lambda pipe=pipe: pipe["report"].agl1p)
        _check(out, "gp", f"p{p}-t-involution-index",
               f"The involutions of T generate a subgroup of index {1 if p == 3 else 2} for {base}.",
               1 if p == 3 else 2,
               lambda pipe=pipe: pipe["report"].inv_subgroup_index)
        _check(out, "gp", f"p{p}-family",
               "The (d, s) power-image maps represent p(p-1) distinct classes, "
               f"match J through (s, t) value tables, and compose by (d1 d2, s1 d2^-1 + s2) for {base}.",
               p * (p - 1),
               lambda pipe=pipe: len(theta_two_param_family(
                   pipe["G"], pipe["jd"], pipe["gens"])))
    return out


def _hp_suite(runs: _Runs, include_p7: bool) -> list[ReproCheck]:
    out: list[ReproCheck] = []
    grid = (3, 5, 7) if include_p7 else (3, 5)
    for p in grid:
        pipe = runs.full(name="hp", p=p)
        base = f"the order-{p}^3 two-generator group of exponent p^2"
        _check(out, "hp", f"p{p}-jc-count",
               f"|J| = p for {base}.",
               p, lambda pipe=pipe: len(pipe["jd"]))
        _check(out, "hp", f"p{p}-jc-agreement",
               f"Direct gamma enumeration and the bilinear solution space give the same J for {base}.",
               True, lambda pipe=pipe: {r.key for r in pipe["jc"]} == {r.key for r in pipe["jd"]})
        _check(out, "hp", f"p{p}-jc-commutator-multiples",
               f"Every member of J has bilinear map c * (commutator map), c in F_p, for {base}.",
               list(range(p)),
               lambda pipe=pipe: sorted(
                   _commutator_multiple(pipe["G"], rs) for rs in pipe["jd"]))
        _check(out, "hp", f"p{p}-hc-count",
               f"|H| = p - 1 for {base}.",
               p - 1, lambda pipe=pipe: len(pipe["hc"]))
        _check(out, "hp", f"p{p}-t-order",
               f"T has order p - 1 for {base}.",
               p - 1, lambda pipe=pipe: pipe["tg"].order)
        _check(out, "hp", f"p{p}-t-cyclic",
               f"T is cyclic for {base}.",
               True, lambda pipe=pipe: pipe["report"].cyclic)
        _check(out, "hp", f"p{p}-excluded",
               "Exactly one member of J is not isomorphic to the group: "
               f"its circle group is abelian and its bilinear map is -1/2 times the commutator map for {base}.",
               [((p - 1) // 2, True)],
               lambda pipe=pipe, p=p: sorted(
                   (_commutator_multiple(pipe["G"], rs), rs.is_abelian())
                   for rs in pipe["jd"]
                   if rs.key not in {h.key for h in pipe["hc"]}))
    return out


def _free_suite(runs: _Runs, include_p7: bool) -> list[ReproCheck]:
    out: list[ReproCheck] = []
    for p in (3, 5):
        pipe = runs.full(name="free_c2_exp_p", p=p, n=2)
        base = f"the free class-two exponent-{p} group on 2 generators"
        _check(out, "free", f"n2-p{p}-jc-count",
               f"|J| = p for {base}.",
               p, lambda pipe=pipe: len(pipe["jd"]))
        _check(out, "free", f"n2-p{p}-jc-agreement",
               f"Direct gamma enumeration and the bilinear solution space give the same J for {base}.",
               True, lambda pipe=pipe: {r.key for r in pipe["jc"]} == {r.key for r in pipe["jd"]})
        _check(out, "free", f"n2-p{p}-jc-commutator-multiples",
               f"The equivariant bilinear maps are exactly the F_p multiples of the commutator map for {base}.",
               list(range(p)),
               lambda pipe=pipe: sorted(
                   _commutator_multiple(pipe["G"], rs) for rs in pipe["jd"]))
        _check(out, "free", f"n2-p{p}-t-order",
               f"T is cyclic of order p - 1 for {base}.",
               (p - 1, True),
               lambda pipe=pipe: (pipe["tg"].order, pipe["report"].cyclic))
        _check(out, "free", f"n2-p{p}-excluded",
               f"The -1/2 multiple of the commutator map gives the abelian circle excluded from H for {base}.",
               [((p - 1) // 2, True)],
               lambda pipe=pipe: sorted(
                   (_commutator_multiple(pipe["G"], rs), rs.is_abelian())
                   for rs in pipe["jd"]
                   if rs.key not in {h.key for h in pipe["hc"]}))
    pipe = runs.free_delta(3, 3)
    base = "the free class-two exponent-3 group on 3 generators"
    _check(out, "free", "n3-p3-jc-count",
           f"|J| = 3 through the bilinear solution space for {base}.",
           3, lambda pipe=pipe: len(pipe["jd"]))
    _check(out, "free", "n3-p3-jc-commutator-multiples",
           f"The equivariant bilinear maps are exactly the F_3 multiples of the commutator map for {base}.",
           [0, 1, 2],
           lambda pipe=pipe: sorted(
               _commutator_multiple(pipe["G"], rs) for rs in pipe["jd"]))
    _check(out, "free", "n3-p3-excluded",
           f"The -1/2 multiple of the commutator map gives the abelian circle excluded from H for {base}.",
           [(1, True)],
           lambda pipe=pipe: sorted(
               (_commutator_multiple(pipe["G"], rs), rs.is_abelian())
               for rs in pipe["jd"]
               if rs.key not in {h.key for h in pipe["hc"]}))
    _check(out, "free", "n3-p3-t-order",
           f"T is cyclic of order 2 for {base}.",
           (2, True), lambda pipe=pipe: (pipe["tg"].order, pipe["report"].cyclic))
    _check(out, "free", "n3-p3-t-powers",
           f"The power-map classes fill T for {base}.",
           True,
           lambda pipe=pipe: {c.key for c in power_theta_family(
               pipe["G"], pipe["gens"])} == {c.key for c in pipe["tg"].classes})
    return out


def _powers_suite(runs: _Runs, include_p7: bool) -> list[ReproCheck]:
    out: list[ReproCheck] = []
    grid = _POWER_GRID + (_POWER_GRID_P7 if include_p7 else ())
    for label, kw, size in grid:
        def compute(kw=kw):
            G = runs.group(**kw)
            if kw["name"] == "free_c2_exp_p":
                gens = free_aut_generators(G)
            else:
                auts = runs.auts(G)
                gens = [auts.perms[i] for i in auts.generating_set()]
            return len(power_theta_family(G, gens))
        _check(out, "powers", label,
               "The power maps x -> x^d, d ranging over units of the exponent "
               f"of G/Z, give phi(exp(G/Z)) = {size} distinct classes of T for preset {label} "
               "(each map verified against its gamma and the closure law).",
               size, compute)
    return out


def _big_delta_suite(runs: _Runs, include_p7: bool) -> list[ReproCheck]:
    out: list[ReproCheck] = []
    for n, dim in ((4, 60), (5, 150)):
        def compute(n=n):
            basis = symmetric_delta_basis(n)
            flat = np.stack([b.reshape(-1) for b in basis])
            ranks = {p: len(rref_fp(flat % p, p)[1]) for p in (3, 5)}
            return (len(basis), ranks[3], ranks[5])
        _check(out, "big-delta-dim", f"n{n}",
               f"The symmetric bilinear maps V x V -> W with rank(V) = {n}, "
               f"rank(W) = C({n},2) form a space of dimension C({n},2) * C({n}+1,2) = {dim} "
               "over F_3 and over F_5.",
               (dim, dim, dim), compute)
    return out


def _abelian_suite(runs: _Runs, include_p7: bool) -> list[ReproCheck]:
    out: list[ReproCheck] = []
    for label, factors in (("c9", [9]), ("c25", [25]), ("c27", [27]),
                           ("c3x3", [3, 3])):
        pipe = runs.full(name="abelian", factors=factors)
        _check(out, "abelian", f"{label}-jc-count",
               f"J contains only the right translations for the abelian group {label}.",
               1, lambda pipe=pipe: len(pipe["jd"]))
        _check(out, "abelian", f"{label}-t-order",
               f"T is trivial for the abelian group {label}.",
               1, lambda pipe=pipe: pipe["tg"].order)
    return out


_SUITE_FNS = {
    "gp": _gp_suite,
    "hp": _hp_suite,
    "free": _free_suite,
    "powers": _powers_suite,
    "big-delta-dim": _big_delta_suite,
    "abelian": _abelian_suite,
}


def run_suite(name: str, *, include_p7: bool = False, cache_dir=None,
              budget: int = 10 ** 8, runs: _Runs | None = None
              ) -> list[ReproCheck]:
    if name not in _SUITE_FNS:
        raise MismatchFound(f"unknown suite {name!r}; choose from {SUITES}")
    if runs is None:
        runs = _Runs(cache_dir, budget)
    return _SUITE_FNS[name](runs, include_p7)


def run_all(*, include_p7: bool = False, cache_dir=None,
            budget: int = 10 ** 8) -> list[ReproCheck]:
    runs = _Runs(cache_dir, budget)
    out: list[ReproCheck] = []
    for name in SUITES:
        out += run_suite(name, include_p7=include_p7, runs=runs)
    return out


def report(checks: list[ReproCheck], *, with_timings: bool = False) -> dict:
    """Canonical report dict; deterministic unless timings are requested."""
    rows = []
    for c in checks:
        row = {
            "suite": c.suite,
            "id": c.check_id,
            "claim": c.claim,
            "expected": _plain(c.expected),
            "computed": _plain(c.computed),
            "match": c.match,
        }
        if with_timings:
            row["seconds"] = round(c.seconds, 3)
        rows.append(row)
    return {
        "version": MANIFEST_VERSION,
        "checks": rows,
        "total": len(rows),
        "mismatches": sum(not c.match for c in checks),
        "all_match": all(c.match for c in checks),
    }


def _plain(v):
    """JSON-stable rendering: tuples/arrays to lists, numpy scalars to ints."""
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.bool_):
        return bool(v)
    return v


def verify(checks: list[ReproCheck]) -> None:
    bad = [c for c in checks if not c.match]
    if bad:
        lines = [
            f"{c.suite}/{c.check_id}: expected {c.expected!r}, computed {c.computed!r}"
            for c in bad
        ]
        raise MismatchFound(
            f"{len(bad)} of {len(checks)} checks disagree:\n" + "\n".join(lines))


def report_json(checks: list[ReproCheck], *, with_timings: bool = False,
                compact: bool = False) -> str:
    rep = report(checks, with_timings=with_timings)
    if compact:
        return json.dumps(rep, sort_keys=True, separators=(",", ":"))
    return json.dumps(rep, sort_keys=True, indent=2)
