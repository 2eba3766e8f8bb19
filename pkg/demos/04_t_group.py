"""
The quotient T(G) of the multiple holomorph
===========================================

NHol(G) is the normalizer of Hol(G) in S(G); the quotient
T(G) = NHol(G)/Hol(G) acts regularly on H(G), so its elements are the
classes of the isomorphisms theta: G -> circle attached to the H(G)
members.  This script assembles T(G) for two presets and reads the
structural report.
"""

from holo import agl1_table, analyze, automorphism_group, build_t_group, \
    hc_set, jc_set, t_action_check
from holo.presentations import preset


def pipeline(name, **kw):
    G = preset(name, **kw)
    auts = automorphism_group(G)
    aut_gens = [auts.perms[i] for i in auts.generating_set()]
    jc = jc_set(G, auts)
    hc = hc_set(G, jc)
    tg = build_t_group(G, hc, aut_gens)
    return G, auts, aut_gens, jc, hc, tg


# Order-27 exponent-9 preset: T(G) is cyclic of order 2, generated by
# the class of the inversion-flavored theta.
G, auts, aut_gens, jc, hc, tg = pipeline("hp", p=3)
rep = analyze(tg, G.prime())
print("group:", G.name)
print("|J| =", len(jc), " |H| =", len(hc), " |T| =", rep.order,
      " cyclic:", rep.cyclic)

# The action of T(G) on H(G) is checked to be regular: one class maps
# rho(G) onto each member.
print("regular action on H(G):", t_action_check(G, tg, jc))

# Order-81 preset: T(G) is nonabelian of order p(p-1) and matches the
# affine group of the line over F_p (recognized structurally: unique
# normal subgroup of order p acted on faithfully).
G, auts, aut_gens, jc, hc, tg = pipeline("gp", p=3)
rep = analyze(tg, G.prime())
print("\ngroup:", G.name)
print("|J| =", len(jc), " |H| =", len(hc), " |T| =", rep.order)
print("abelian:", rep.abelian, " affine-line shape:", rep.agl1p)
print("involutions:", rep.involutions,
      " index of the subgroup they generate:", rep.inv_subgroup_index)

# Sanity: the reference affine-line table has the same order profile.
T = agl1_table(3)
print("reference affine group of the line over F_3: order", T.n,
      " abelian:", T.is_abelian())

# Abelian groups are rigid here: J = H = {rho(G)} and T is trivial.
A = preset("abelian", factors=[9])
auts = automorphism_group(A)
aut_gens = [auts.perms[i] for i in auts.generating_set()]
jc = jc_set(A, auts)
tg = build_t_group(A, hc_set(A, jc), aut_gens)
print("\ngroup:", A.name, " |J| =", len(jc), " |T| =", analyze(tg, 3).order)
