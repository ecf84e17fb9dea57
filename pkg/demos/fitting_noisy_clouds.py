"""Finding the degree of a hypersurface hidden in a real point cloud.

Points are sampled on a random real quadric surface in P^3.  Without noise the
minimal-degree search finds degree 2 and recovers the coefficients; with
noise the residual (the smallest singular value of the column-normalized
Veronese matrix) grows with the noise level while the coefficients stay close.
"""

import numpy as np

from veronese_lab import FloatCloud, fit_hypersurface, minimal_degree
from veronese_lab.constructions import quadric_coefficients, random_real_quadric, real_quadric_cloud
from veronese_lab.sampling import make_rng

rng = make_rng(99)
A = random_real_quadric(3, rng)
true = quadric_coefficients(A)
pts = real_quadric_cloud(A, 30, rng)

search = minimal_degree(FloatCloud(pts), d_max=3)
print("noiseless: degree", search.degree, "residuals", {d: f"{r:.1e}" for d, r in search.residuals.items()})
print("angle to the true quadric: %.2e rad" % search.fit.angle_to(true))

z = rng.standard_normal(pts.shape)
print("\nnoise level   residual    angle")
for sigma in (1e-8, 1e-6, 1e-4, 1e-2):
    res = fit_hypersurface(FloatCloud(pts + sigma * z), 2)
    print(f"{sigma:8.0e}   {res.residual:9.2e}   {res.angle_to(true):9.2e}")

print("\nrandom cloud, d <= 3:", minimal_degree(FloatCloud(np.random.default_rng(0).standard_normal((40, 4))), 3, 1e-6).found)
