"""Command line front end.

Five commands, all emitting canonical JSON (sorted keys, no timestamps, so
identical configurations produce byte-identical output):

  holo build   --preset gp -p 3            group facts only
  holo jc      --preset hp -p 5            J(G), the regular subgroups
                                           normal in the holomorph
  holo hc      --preset free -p 3 -n 2     the members isomorphic to G
  holo tgroup  --preset gp -p 5            T(G) with structure report
  holo repro all                           expected-values harness

The J/H commands accept --strategy generic|delta|both.  ``generic`` walks
gamma functions directly, ``delta`` solves the bilinear equivariance system
and converts back, and ``both`` runs the two independently, fails loudly on
any disagreement of the resulting subgroup sets, and reports the agreement.

Exit codes: 0 on success; every library error family has its own code (see
errors.py), e.g. an order cap hit exits 12, a failed expected-values run
exits 23, a corrupt cache entry 24.  Unexpected exceptions exit 1.

The automorphism listing can be cached across runs with --cache DIR or the
HOLO_CACHE_DIR environment variable; entries are keyed by the canonical hash
of the multiplication table and re-verified on load.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .automorphisms import AutGroup, free_aut_generators
from .cache import get_auts
from .deltas import delta_from_gamma, jc_from_deltas
from .errors import HoloError, MismatchFound
from .groups import GroupTable
from .holomorph import (
    RegularSubgroup,
    _central_aut_indices,
    gamma_aut_indices,
    hc_set,
    jc_set,
)
from .presentations import DEFAULT_ORDER_CAP, preset
from .repro import SUITES, report, run_all, run_suite
from .tgroup import analyze, build_t_group

__all__ = ["main", "build_parser"]

DEFAULT_BUDGET = 10 ** 8

_PRESET_ALIASES = {"free": "free_c2_exp_p"}


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="holo",
        description="regular subgroups normal in the holomorph, and T(G)")
    sub = top.add_subparsers(dest="cmd", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--preset", default=None,
                        help="gp | hp | free | abelian")
    common.add_argument("-p", type=int, default=None, help="odd prime")
    common.add_argument("-n", type=int, default=None, help="generator rank")
    common.add_argument("--factors", default=None,
                        help="cyclic factors for the abelian preset, e.g. 3,3")
    common.add_argument("--cap", type=int, default=DEFAULT_ORDER_CAP,
                        help="largest group order that will be built")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="search step budget")
    common.add_argument("--cache", default=None,
                        help="automorphism cache directory "
                             "(default: $HOLO_CACHE_DIR if set)")
    common.add_argument("--out", default=None, help="write JSON here")
    common.add_argument("--json", action="store_true",
                        help="compact single-line JSON")

    strat = argparse.ArgumentParser(add_help=False)
    strat.add_argument("--strategy", choices=("generic", "delta", "both"),
                       default="generic")

    sub.add_parser("build", parents=[common], help="group facts")
    sub.add_parser("jc", parents=[common, strat],
                   help="regular subgroups normal in the holomorph")
    sub.add_parser("hc", parents=[common, strat],
                   help="members of J isomorphic to G")
    sub.add_parser("tgroup", parents=[common, strat],
                   help="T(G) and its structure")
    rp = sub.add_parser("repro", parents=[common],
                        help="recompute the expected-values manifest")
    rp.add_argument("suite", nargs="?", default="all",
                    help="one of %s or 'all'" % (", ".join(SUITES)))
    rp.add_argument("--p7", action="store_true",
                    help="include the opt-in p = 7 rows")
    rp.add_argument("--timings", action="store_true",
                    help="include per-check seconds (breaks byte-identity)")
    return top


def _group_from_args(args) -> GroupTable:
    if not args.preset:
        raise HoloError("--preset is required for this command")
    name = _PRESET_ALIASES.get(args.preset, args.preset)
    kw: dict = {"name": name, "cap": args.cap}
    if args.p is not None:
        kw["p"] = args.p
    if args.n is not None:
        kw["n"] = args.n
    if args.factors:
        kw["factors"] = [int(x) for x in str(args.factors).split(",")]
    return preset(**kw)


def _group_block(G: GroupTable) -> dict:
    return {
        "name": G.name,
        "order": G.n,
        "exponent": G.exponent(),
        "abelian": G.is_abelian(),
        "center_order": len(G.center()),
        "derived_order": len(G.derived()),
        "frattini_order": len(G.frattini()),
        "class_le_two": G.is_class_le_two(),
        "generators": [G.element_name(g) for g in G.generators],
    }


def _aut_machinery(G: GroupTable, args, *, need_full: bool):
    """(auts or None, aut generator perms, central aut perms or None).

    The free presets carry a structural generating set of Aut(G), so the
    delta strategy runs there without listing the automorphism group.
    """
    if not need_full and G.name.startswith("free_c2_exp_p"):
        return None, free_aut_generators(G), None
    auts = get_auts(G, args.cache, budget=args.budget)
    gens = [auts.perms[i] for i in auts.generating_set()]
    central = auts.perms[_central_aut_indices(auts)]
    return auts, gens, central


def _jc_by_strategy(G: GroupTable, args
                    ) -> tuple[list[RegularSubgroup], AutGroup | None, list[np.ndarray], dict]:
    """The J list for the chosen strategy, plus Aut machinery and notes."""
    strategy = getattr(args, "strategy", "generic")
    notes: dict = {"strategy": strategy}
    if strategy == "generic":
        auts, gens, _ = _aut_machinery(G, args, need_full=True)
        return jc_set(G, auts, args.budget), auts, gens, notes
    if strategy == "delta":
        auts, gens, central = _aut_machinery(G, args, need_full=False)
        jd = jc_from_deltas(G, gens, central_aut_perms=central)
        return jd, auts, gens, notes
    # both: run the two enumerations independently and compare subgroup sets
    auts, gens, central = _aut_machinery(G, args, need_full=True)
    jg = jc_set(G, auts, args.budget)
    jd = jc_from_deltas(G, gens, central_aut_perms=central)
    if {r.key for r in jg} != {r.key for r in jd}:
        raise MismatchFound(
            "generic and delta enumerations disagree: "
            f"{len(jg)} vs {len(jd)} subgroups with differing sets")
    notes["agreement"] = True
    notes["generic_count"] = len(jg)
    return jd, auts, gens, notes


def _member_block(G: GroupTable, rs: RegularSubgroup,
                  auts: AutGroup | None) -> dict:
    out: dict = {
        "gamma_key": rs.key,
        "circle_abelian": rs.is_abelian(),
        "trivial": rs.gamma.is_trivial(),
    }
    if auts is not None:
        out["gamma_aut_indices"] = [
            int(v) for v in gamma_aut_indices(G, auts, rs.gamma)]
    delta = rs.delta
    if delta is None:
        try:
            delta = delta_from_gamma(G, rs.gamma)
        except HoloError:
            delta = None
    if delta is not None:
        out["delta_values"] = [int(v) for v in delta.vals.reshape(-1)]
        out["delta_shape"] = list(delta.vals.shape)
    if rs.iso_to_G is not None:
        out["iso_to_G"] = [int(v) for v in rs.iso_to_G]
    return out


def cmd_build(args) -> dict:
    G = _group_from_args(args)
    return {"group": _group_block(G)}


def cmd_jc(args) -> dict:
    G = _group_from_args(args)
    jc, auts, _, notes = _jc_by_strategy(G, args)
    members = sorted((_member_block(G, rs, auts) for rs in jc),
                     key=lambda m: m["gamma_key"])
    return {"group": _group_block(G), "count": len(jc),
            "members": members, **notes}


def cmd_hc(args) -> dict:
    G = _group_from_args(args)
    jc, auts, _, notes = _jc_by_strategy(G, args)
    hc = hc_set(G, jc, args.budget)
    members = sorted((_member_block(G, rs, auts) for rs in hc),
                     key=lambda m: m["gamma_key"])
    return {"group": _group_block(G), "jc_count": len(jc),
            "count": len(hc), "members": members, **notes}


def cmd_tgroup(args) -> dict:
    G = _group_from_args(args)
    jc, auts, gens, notes = _jc_by_strategy(G, args)
    hc = hc_set(G, jc, args.budget)
    tg = build_t_group(G, hc, gens)
    rep = analyze(tg, G.prime())
    return {"group": _group_block(G), "jc_count": len(jc),
            "hc_count": len(hc), "t": rep.as_dict(), **notes}


def cmd_repro(args) -> dict:
    if args.suite == "all":
        checks = run_all(include_p7=args.p7, cache_dir=args.cache,
                         budget=args.budget)
    else:
        checks = run_suite(args.suite, include_p7=args.p7,
                           cache_dir=args.cache, budget=args.budget)
    return report(checks, with_timings=args.timings)


_COMMANDS = {
    "build": cmd_build,
    "jc": cmd_jc,
    "hc": cmd_hc,
    "tgroup": cmd_tgroup,
    "repro": cmd_repro,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload = _COMMANDS[args.cmd](args)
    except HoloError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    if args.json:
        text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    else:
        text = json.dumps(payload, sort_keys=True, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    if payload.get("all_match") is False:
        print("error: expected-values mismatch", file=sys.stderr)
        return MismatchFound.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
