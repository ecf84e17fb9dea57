"""Six points lie on a conic exactly when a 6x6 determinant vanishes.

We take the conic x0*x2 - x1^2, pick six rational points on it, and watch
the determinant of their degree-2 Veronese matrix.  Moving one point off
the conic makes the determinant nonzero, and the unique conic through the
six points is recovered from the kernel.
"""

from fractions import Fraction

from veronese_lab import PointConfig, determinant, hypersurface_system, membership, multi_veronese

ts = [0, 1, 2, -1, Fraction(1, 3)]
points = [(1, t, t * t) for t in ts] + [(0, 0, 1)]
cfg = PointConfig.from_rows(points)
M = multi_veronese(cfg, 2)

print("points:", list(cfg))
print("det of the 6x6 Veronese matrix:", determinant(M))
print("membership:", membership(cfg, 2))
print("conic through them:", hypersurface_system(cfg, 2).forms[0])

moved = PointConfig.from_rows(points[:5] + [(1, 5, 24)])
print("\nafter moving the last point to [1:5:24]")
print("det:", determinant(multi_veronese(moved, 2)))
print("conics through all six:", hypersurface_system(moved, 2).m)
