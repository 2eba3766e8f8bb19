"""
The bilinear correspondence
===========================

For a class-two group, a gamma function is equivalent to an
Aut-equivariant bilinear map Delta: G/Z(G) x G/G' -> Z(G) with
Delta(gZ, hG') = [g, gamma(h)].  That turns the subgroup enumeration
into exact linear algebra over section moduli, with an F_p fast path
when every modulus is prime.  This script walks the correspondence and
the solver pieces.
"""

import numpy as np

from holo import automorphism_group, commutator_delta, delta_from_gamma, \
    enumerate_deltas, gamma_from_delta, jc_set, symmetric_delta_basis
from holo.deltas import kernel_basis_fp, rref_fp, standard_spaces
from holo.presentations import preset

# Exact Gauss-Jordan over F_p is the workhorse: reduced row echelon
# form with unit pivots, and right null spaces from it.
A = np.array([[2, 1, 1], [1, 1, 3], [0, 4, 1]])
R, pivots = rref_fp(A, 5)
print("rref over F_5:\n", R, "\npivot columns:", pivots)
print("null space rows:", kernel_basis_fp(A, 5).shape[0])

# The three section spaces: V1 = G/Z(G), V2 = G/G', W = Z(G), each a
# coordinate system (moduli, lifts, coordinate maps) on a quotient or
# subgroup of G.
G = preset("hp", p=3)
v1, v2, w = standard_spaces(G)
print("\ngroup:", G.name)
print("moduli of G/Z:", v1.moduli, " G/G':", v2.moduli, " Z:", w.moduli)

# Every multiple of the commutator map is an equivariant solution here:
# Delta_c(g, h) = [g, h]^c.  c = 0 is the zero map (the subgroup rho(G)
# itself); only c = 0 is symmetric on this group.
for c in range(3):
    d = commutator_delta(G, c)
    print(f"Delta_{c}: zero={d.is_zero()} symmetric={d.is_symmetric()}")

# Solving the equivariance conditions finds exactly those multiples.
auts = automorphism_group(G)
aut_gens = [auts.perms[i] for i in auts.generating_set()]
sols = enumerate_deltas(G, aut_gens)
want = {commutator_delta(G, c).key() for c in range(3)}
print("solutions:", len(sols), " = commutator multiples:",
      {d.key() for d in sols} == want)

# Round trip: gamma -> Delta -> gamma is the identity on keys, and the
# value tables match elementwise.
jc = jc_set(G, auts)
for rs in jc:
    d = delta_from_gamma(G, rs.gamma)
    back = gamma_from_delta(G, d, aut_gens)
    assert back.key == rs.gamma.key
print("gamma <-> Delta round trip holds on all", len(jc), "members")

# The space of symmetric bilinear maps V x V -> W with rank(V) = n and
# rank(W) = C(n, 2) has dimension C(n, 2) * C(n+1, 2); these are the
# coordinates behind the large elementary abelian families.
for n in (4, 5):
    basis = symmetric_delta_basis(n)
    print(f"n={n}: symmetric space dimension {len(basis)}")
