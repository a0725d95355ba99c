"""Enumerate small Cayley graphs of SL_n(F_p) and read off diameters and lambda_2."""

from latticexp import diameter, enumerate_cayley, second_eigenvalue, sigma_bad, sigma_standard, subset_expansion_check

for n, p in ((3, 2), (3, 3), (4, 2)):
    for S in (sigma_bad(n, p), sigma_standard(n, p)):
        g = enumerate_cayley(S)
        rep = second_eigenvalue(g)
        print("%-45s |V|=%6d  diam=%2d  lambda2=%.6f  K in [%.4f, %.4f]" % (g.label, g.num_vertices, diameter(g), rep.lambda2, rep.kazhdan_lower, rep.kazhdan_upper))

# random BFS-grown subsets never come close to the guaranteed expansion constant
g = enumerate_cayley(sigma_standard(3, 3))
rep = subset_expansion_check(g, 1.5625e-6, trials=300)
print("smallest |dA|/|A| seen on %s: %.4f (size %d)" % (g.label, rep.min_ratio, rep.argmin_size))
