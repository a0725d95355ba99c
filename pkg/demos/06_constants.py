"""The closed-form constants, and where the simplified tau bound stops being implied."""

from latticexp import headline_constants, tau_bounds_universal

print(headline_constants(s=2).to_text())
print()
for d in (3, 10, 30, 100):
    tb = tau_bounds_universal(d, 1)
    print("d=%3d k=1  exact %.3e  simplified %.3e  implied: %s" % (d, tb.lower_exact, tb.lower_simplified, tb.simplification_holds))
