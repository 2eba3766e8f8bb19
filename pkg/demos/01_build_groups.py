"""
Building presented p-groups as multiplication tables
====================================================

Every computation in this package starts from a GroupTable: a finite
group realized as the index set {0, ..., n-1} with element 0 the
identity, an n x n multiplication table, and normal-form exponent
vectors for the presented generators.  This script builds the four
preset families and pokes at the structure helpers.
"""

import numpy as np

from holo import preset
from holo.presentations import ClassTwoPresentation, build_group

# The two-generator preset of order p^4: x and y of order p^2 with
# [x, y] = x^p central.  Collection to normal form x^a y^b produces the
# table; the constructor re-verifies associativity, identity, inverses,
# and that the declared relations actually hold.
G = preset("gp", p=3)
print("name:", G.name)
print("order:", G.n)
print("exponent:", G.exponent())
print("|Z(G)|:", len(G.center()), " |G'|:", len(G.derived()))
print("class <= 2:", G.is_class_le_two())

# Elements print in generator normal form.
x, y = (int(g) for g in G.generators)
print("generators:", G.element_name(x), G.element_name(y))

# The commutator [y, x] collapses to a power of x.
c = G.commutator(y, x)
print("[y, x] =", G.element_name(c), " order", G.order_of(c))

# The order-p^3 preset replaces y^(p^2) by y^p; same commutator relation.
H = preset("hp", p=3)
print("\nname:", H.name, " order:", H.n, " exponent:", H.exponent())

# The free class-two exponent-p group on n generators carries each
# commutator [x_j, x_k] as an explicit central generator, so the order
# is p^(n + n(n-1)/2).
F = preset("free_c2_exp_p", p=3, n=2)
print("name:", F.name, " order:", F.n, " |Z|:", len(F.center()))

# Abelian groups come from an invariant factor list.
A = preset("abelian", factors=[3, 3])
print("name:", A.name, " abelian:", A.is_abelian())

# Custom presentations work too: primes, relative orders, power words,
# and central commutator words.  An inconsistent presentation (one whose
# collected table breaks a group axiom or a declared relation) raises
# rather than returning a broken table.
pres = ClassTwoPresentation(
    p=5,
    rel_orders=[25, 5],
    commutators={(1, 0): [(0, -5)]},
    gen_names=["x", "y"],
    name="order-125 custom",
)
K = build_group(pres)
print("\ncustom group:", K.name, " order:", K.n)

# Power tables give every g^k at once; column d is the power map x -> x^d.
pw = K.pow_table()
print("x^7 =", K.element_name(int(pw[K.generators[0], 7])))

# Element orders come as a vector; the exponent is their lcm.
orders = K.orders()
print("order multiset:", {int(o): int((orders == o).sum()) for o in np.unique(orders)})
