"""
Regular subgroups normal in the holomorph
=========================================

The holomorph Hol(G) is the normalizer of the right regular
representation rho(G) inside the symmetric group S(G).  A regular
subgroup N <= S(G) normal in Hol(G) is encoded by its gamma function
gamma: G -> Aut(G) via nu(h) = gamma(h) rho(h); the defining laws are
gamma(gh) = gamma(h)gamma(g) and equivariance gamma(g^beta) =
gamma(g)^beta for every beta in Aut(G).  This script enumerates the set
J(G) of such subgroups two independent ways and picks out H(G), the
members isomorphic to G.
"""

from holo import (
    automorphism_group,
    free_aut_generators,
    hc_set,
    jc_from_deltas,
    jc_set,
)
from holo.presentations import preset

# The order-27 exponent-9 preset.  Aut(G) is listed by backtracking on
# generator images; 54 automorphisms here.
G = preset("hp", p=3)
auts = automorphism_group(G)
print("group:", G.name, " |Aut(G)|:", auts.size)

# Generic enumeration: search gamma functions directly, then rebuild
# each circle group (g o h = g^{gamma(h)} h), check the group axioms,
# and verify normality in Hol(G) by explicit conjugation.
jc = jc_set(G, auts)
print("|J(G)| =", len(jc))
for rs in jc:
    print("  member: trivial gamma" if rs.gamma.is_trivial()
          else "  member: abelian circle" if rs.is_abelian()
          else "  member: nonabelian circle")

# Independent route: solve for the equivariant bilinear maps
# Delta(gZ, hG') = [g, gamma(h)] over the section moduli and convert
# each solution back to a gamma.  Same subgroups, found by linear
# algebra instead of search.
aut_gens = [auts.perms[i] for i in auts.generating_set()]
jd = jc_from_deltas(G, aut_gens)
print("|J(G)| via bilinear solutions =", len(jd))
assert {rs.key for rs in jc} == {rs.key for rs in jd}
print("the two enumerations agree on the subgroup sets")

# H(G): the members whose circle group is isomorphic to G.  The lone
# excluded member here is the abelian circle (G has class exactly two,
# so no abelian group is isomorphic to it).
hc = hc_set(G, jc)
print("|H(G)| =", len(hc))
excluded = [rs for rs in jc if rs.key not in {m.key for m in hc}]
print("excluded members:", len(excluded),
      " abelian:", all(rs.is_abelian() for rs in excluded))

# Each H(G) member carries the found isomorphism G -> circle; for these
# presets a power map x -> x^k suffices, and the image of x names it.
for rs in hc:
    if rs.iso_to_G is not None and not rs.gamma.is_trivial():
        print("isomorphism attached, x ->",
              G.element_name(int(rs.iso_to_G[G.generators[0]])))

# The free class-two exponent-p presets skip the Aut(G) listing
# entirely: structural automorphism generators plus the bilinear route
# give J(G) at orders where listing Aut(G) is hopeless.
F = preset("free_c2_exp_p", p=3, n=2)
gens = free_aut_generators(F)
jf = jc_from_deltas(F, gens)
print("\ngroup:", F.name, " |J(G)| =", len(jf),
      " abelian members:", sum(rs.is_abelian() for rs in jf))
