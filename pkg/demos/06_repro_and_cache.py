"""
Expected-value runs and the automorphism cache
==============================================

The repro harness re-derives a fixed battery of headline values
(set sizes, group orders, structure flags) and compares them to the
stored expectations, producing a deterministic JSON-able report.  The
automorphism cache keeps Aut(G) listings on disk so repeated runs skip
the backtracking search.  The same machinery backs the `holo` command
line tool.
"""

import tempfile

from holo import get_auts
from holo.cache import cache_path
from holo.presentations import preset
from holo.repro import SUITES, report, run_suite

# Run two of the cheap suites directly.  Each check row carries a plain
# mathematical claim, the expected value, and the recomputed one.
checks = run_suite("abelian") + run_suite("big-delta-dim")
for c in checks:
    print(f"[{c.suite}] {c.check_id}: expected {c.expected!r}, "
          f"computed {c.computed!r}, match={c.match}")

# The canonical report is timing-free so identical runs produce
# identical bytes; pass with_timings=True for a human-facing variant.
rep = report(checks)
print("\nall_match:", rep["all_match"], " rows:", len(rep["checks"]))
print("available suites:", SUITES)

# The cache stores verified permutation rows per group (keyed by a hash
# of the multiplication table) and re-verifies them on every load:
# shapes, bijectivity, multiplicativity on a generator grid, identity
# and inverse closure.  Corrupt files are recomputed with a warning.
G = preset("hp", p=3)
with tempfile.TemporaryDirectory() as tmp:
    auts = get_auts(G, cache_dir=tmp)          # computes, then stores
    again = get_auts(G, cache_dir=tmp)         # served from disk
    print("\n|Aut(G)| =", auts.size, "==", again.size)
    print("cache file:", cache_path(tmp, G).name)

# Setting HOLO_CACHE_DIR makes that directory the default for both the
# library (get_auts with no cache_dir) and the CLI (--cache overrides).
print("\nCLI equivalents:")
print("  holo repro --json")
print("  holo tgroup --preset gp -p 3 --cache ~/.holo-cache")
