"""Genericity decay curves: slow elements thin out in growing balls.

For the braid group the count is of center cosets with no pseudo-Anosov
representative (the coset reduction makes the ratio meaningful despite the
infinite center); for free groups, of elements with small tree translation
length.  Ratios are exact rationals; the tail decay exponent is fitted by
least squares on the log-log tail.
"""

from fractions import Fraction

from genlab import Braid3, FreeGroup, GeneratingSet, build_cayley_tree, genericity_experiment

braid = Braid3()
curve = genericity_experiment(braid, None, braid.standard_gens(), 8)
print("B3 with the standard generators: non-pA coset fraction per radius")
for r, q in zip(curve.radii, curve.ratios):
    print(f"  R={r}:  {q}  ({float(q):.3f})")
print("fitted log-log tail slope:", round(curve.fitted_exponent, 2))

wide = GeneratingSet(braid, ["a", "b", "abA"])
curve2 = genericity_experiment(braid, None, wide, 8)
print("\nsame with an enlarged generating set {a, b, abA}:")
print("  tail ratios:", [str(q) for q in curve2.ratios[4:]], "slope", round(curve2.fitted_exponent, 2))

f2 = FreeGroup(2)
_, action = build_cayley_tree(2)
free_curve = genericity_experiment(f2, action, f2.standard_gens(), 9,
                                   tree_threshold=2, word_threshold=Fraction(35, 100))
print("\nF2: fraction with tree translation length <= 2 or stable norm <= 0.35 R:")
for r in range(2, 10):
    print(f"  R={r}: {free_curve.ratios[r]} ({float(free_curve.ratios[r]):.4f})")
print("plot data (two columns, gnuplot-ready):")
print(free_curve.plot_data()[:80] + "...")
