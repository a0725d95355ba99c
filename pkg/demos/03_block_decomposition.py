"""Write a random element of SL_9(F_2) as a short product of block-unitriangular matrices."""

import numpy as np

from latticexp import full_gem_decompose, modp
from latticexp.decompose import full_elementary_word

rng = np.random.default_rng(7)
g = modp.random_sl(9, 2, rng)
res = full_gem_decompose(g, 3, 2)
print("GEMs used: %d (reduction %d + diagonal %d)" % (res.gem_count, res.stats["reduction_gems"], res.stats["diagonal_gems"]))
print("exact reconstruction:", np.array_equal(res.reconstruct(), g))
print("same word in elementary letters: %d letters" % len(full_elementary_word(res)))
print(res.word.to_text().splitlines()[0], "...")
