"""Normality, regularity and secant lines of small point sets.

m points on a line have regularity exactly m, and a line through many of the
points always forces the regularity up.  Points in general position are
normal in low degree.
"""

from veronese_lab import RATIONALS, ProjPoint, is_d_normal, k_generality, max_secant, regularity_of_points, span_dimension
from veronese_lab.sampling import make_rng, random_config

print("collinear points")
for m in range(2, 7):
    line = [ProjPoint((1, k, 2 * k)) for k in range(m)]
    print(f"  {m} points: regularity {regularity_of_points(line)}, max secant {max_secant(line)[0]}")

rng = make_rng(7)
general = list(random_config(3, 8, RATIONALS, rng))
print("\neight random points in P^3")
print("  span dimension:", span_dimension(general))
print("  normal in degrees 0..3:", [is_d_normal(general, d) for d in range(4)])
print("  regularity:", regularity_of_points(general))
print("  k-generality:", k_generality(general))

mixed = general[:4] + [ProjPoint((0, 0, 1, k)) for k in range(5)]
print("\nfour random points plus five on a line")
count, pair = max_secant(mixed)
print(f"  max secant {count} (through points {pair}), regularity {regularity_of_points(mixed)}")
