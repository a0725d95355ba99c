"""Elementary reduction over Z/m and Steinberg symbols that collapse to the identity."""

import numpy as np

from latticexp import IntegersMod, Mat, gauss_elementary_decompose, steinberg_word

rng = np.random.default_rng(0)
R = IntegersMod(6)
while True:
    g = Mat.from_array(R, rng.integers(0, 6, (3, 3)))
    if g.det().is_unit():
        break
res = gauss_elementary_decompose(g, rng)
print("g over Z/6 =", g.to_array().tolist())
print("letters: %d, residual e_11(%d), exact: %s" % (res.letter_count, res.residual[0, 0].payload, res.reconstruct() == g))

R9 = IntegersMod(9)
w = steinberg_word(R9(2), R9(5), 3)
print("symbol {2,5} over Z/9: %d letters, evaluates to identity: %s" % (len(w), w.evaluate().is_identity()))
print(w.to_text())
