"""Probing the multidegree of the configuration variety with random lines.

Fix b-1 random points (they determine a unique hypersurface S) and let the
remaining points move on random lines.  Each line meets S in d points, so the
count of configurations is d^(n-b+1).  The check runs over a large prime field.
"""

from veronese_lab import multidegree_check

for r, d, n in [(2, 1, 4), (2, 2, 6), (2, 3, 10), (3, 2, 10), (2, 2, 8)]:
    rep = multidegree_check(r, d, n, trials=50, seed=1)
    print(f"r={r} d={d} n={n}: {rep.passes}/{rep.trials} trials pass, "
          f"{rep.lines} line(s), expected value {rep.expected_value}")
