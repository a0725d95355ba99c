"""Four generators versus twenty-eight: how the spectral gap behaves as the rank grows.

The 4-element set {A, A^-1, B, B^-1} generates SL_n(F_2) for every n, but the
basis-indicator witness shows its Kazhdan constant decays like sqrt(2/n).
The 28-element block set keeps the Schreier gap bounded below as l grows.
"""

import math

from latticexp import schreier_graph, second_eigenvalue, sigma_bad, sigma_good, witness_upper_bound
from latticexp.spectral import basis_indicator

print("bad set: witness upper bound on the Kazhdan constant")
for n in (6, 9, 12, 18):
    g = schreier_graph(n, 2, sigma_bad(n, 2))
    w = witness_upper_bound(g, basis_indicator(n, 2))
    print("  n=%2d  witness %.5f   sqrt(2/n) %.5f" % (n, w, math.sqrt(2 / n)))

print("good set: Schreier gap and Kazhdan lower bound")
for l in (2, 3, 4, 5):
    rep = second_eigenvalue(schreier_graph(3 * l, 2, sigma_good(l, 2)), with_lambda_min=False)
    print("  l=%d (n=%2d)  gap %.5f   lower %.5f" % (l, 3 * l, rep.laplacian_gap, rep.kazhdan_lower))
