"""Word-metric balls: exact enumeration and growth.

Enumerates Cayley balls of the rank-3 free group and the 3-strand braid
group, compares against the free-group closed form, and shows the
subadditive growth sequence ln #B(n) / n settling toward its infimum.
"""

import math

from genlab import Braid3, FreeGroup, enumerate_ball, free_ball_count

f3 = FreeGroup(3)
census = enumerate_ball(f3, f3.standard_gens(), 8)
print("free group F3, standard generators")
print("  radius  sphere      ball   closed-form")
for r, s in enumerate(census.sphere_counts):
    print(f"  {r:>6}  {s:>6}  {census.ball_count(r):>8}  {free_ball_count(3, r):>8}")

print("\ngrowth sequence ln #B(n) / n (limit = ln 5 = %.4f):" % math.log(5))
for n, val in enumerate(census.growth_sequence(), start=1):
    print(f"  n={n:>2}  {val:.4f}")

braid = Braid3()
bcensus = enumerate_ball(braid, braid.standard_gens(), 8)
print("\nbraid group B3, generators {a, b} = {s1, s2}")
print("  ball counts:", bcensus.ball_counts)
print("  the braid relation and the central Delta^2 fold the free tree:")
print("  #B_B3(8) =", bcensus.ball_count(8), "vs #B_F2(8) =", free_ball_count(2, 8))
