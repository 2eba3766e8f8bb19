"""
Families of theta maps
======================

Three explicit families of bijections G -> G, each fixing the identity
and representing elements of T(G): the power maps x -> x^d, the
two-parameter family on the order-p^4 preset, and the maps built from
symmetric bilinear values.  Each family member is verified against the
defining laws when constructed, so this script mostly composes them and
watches the class arithmetic.
"""

import numpy as np

from holo import automorphism_group, build_t_group, hc_set, jc_set, \
    power_theta_family, theta_from_symmetric_delta, theta_two_param_family
from holo.deltas import BilinearDelta, standard_spaces
from holo.groups import compose
from holo.presentations import preset

# Power maps.  For d coprime to exp(G/Z) the map x -> x^d represents a
# T(G) class; distinct d give distinct classes, and the family is a
# cyclic subgroup of order phi(exp(G/Z)).  On the order-343 preset that
# fills all of T(G).
G = preset("hp", p=7)
auts = automorphism_group(G)
aut_gens = [auts.perms[i] for i in auts.generating_set()]
fam = power_theta_family(G, aut_gens)
print("group:", G.name, " power classes:", len(fam))

jc = jc_set(G, auts)
tg = build_t_group(G, hc_set(G, jc), aut_gens)
print("|T| =", tg.order, " filled by power maps:",
      {c.key for c in fam} == set(tg.key_index))

# Class arithmetic: theta_2 then theta_3 lands in the class of theta_6.
i2 = tg.class_of_theta(G, fam[1].theta)   # d = 2
i3 = tg.class_of_theta(G, fam[2].theta)   # d = 3
i6 = tg.class_of_theta(G, fam[5].theta)   # d = 6
print("class(theta_2) * class(theta_3) == class(theta_6):",
      int(tg.group.table[i2, i3]) == i6)

# Inversion x -> x^-1 is the d = exp(G) - 1 power map; its class
# squares to the identity.
inv_theta = G.pow_table()[:, G.exponent() - 1].astype(np.int64)
k = tg.class_of_theta(G, inv_theta)
print("inversion class squares to identity:", int(tg.group.table[k, k]) == 0)

# The two-parameter family on the order-p^4 preset: for each unit d and
# each s in F_p, theta_{d,s} fixes x and sends y to a y-power computed
# in the circle group of one J(G) member.  The p(p-1) classes fill T(G)
# and compose by (d1,s1)(d2,s2) = (d1 d2, s1 d2^-1 + s2).
G = preset("gp", p=3)
auts = automorphism_group(G)
aut_gens = [auts.perms[i] for i in auts.generating_set()]
jc = jc_set(G, auts)
tg = build_t_group(G, hc_set(G, jc), aut_gens)
fam2 = theta_two_param_family(G, jc, aut_gens)
print("\ngroup:", G.name, " family size:", len(fam2),
      " fills T(G):", {c.key for c in fam2.values()} == set(tg.key_index))

t21 = fam2[(2, 1)].theta
j = tg.class_of_theta(G, compose(t21, t21))
print("(2,1)^2 lands in class of (d,s) = (1,0):",
      j == tg.class_of_theta(G, fam2[(1, 0)].theta))

# Symmetric bilinear values as theta maps.  On a group whose
# automorphisms are all central these assemble into an elementary
# abelian subgroup of T(G); that hypothesis fails for every preset this
# small, but the composition mechanics are visible on any class-two
# group whose center equals its derived subgroup: coordinates add.
G = preset("hp", p=3)
v1, v2, w = standard_spaces(G)
thetas = {}
for a in range(3):
    for b in range(3):
        for c in range(3):
            vals = np.array([[[a], [b]], [[b], [c]]], dtype=np.int64)
            th, _ = theta_from_symmetric_delta(G, BilinearDelta(v1, v2, w, vals))
            thetas[(a, b, c)] = th
print("\nsymmetric maps on", G.name, ":", len(thetas), "distinct:",
      len({t.tobytes() for t in thetas.values()}))
ok = all(np.array_equal(compose(thetas[k1], thetas[k2]),
                        thetas[tuple((x + y) % 3 for x, y in zip(k1, k2))])
         for k1 in thetas for k2 in thetas)
print("composition is coordinate addition (elementary abelian):", ok)
