"""Lift a congruence-kernel element of SL_3(Z/27) to a product of two commutators."""

import numpy as np

from latticexp import lift_commutators
from latticexp.decompose import group_commutator_mod, random_congruence_element
from latticexp.identities import signed_cycle

m = 27
a = signed_cycle(3, m)
b = np.eye(3, dtype=np.int64)
b[0, 1] = 1
g = random_congruence_element(3, m, np.random.default_rng(1))
x, y = lift_commutators(g, a, b, m)
print("g =", g.tolist())
print("x =", x.tolist())
print("y =", y.tolist())
print("[a,x][b,y] == g:", np.array_equal(group_commutator_mod(a, x, m) @ group_commutator_mod(b, y, m) % m, g))
