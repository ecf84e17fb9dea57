"""When is a configuration a singular point of the variety of configurations?

Three families, each classified by the general decision procedure and by the
closed-form classifiers for plane curves and quadric surfaces:

* ten points on a nodal cubic, with the node marked once and then twice;
* points on the plane pair x0*x1 = 0 in P^3, with k marked points on the
  singular line;
* points on a quadric cone with its vertex marked once and twice.
"""

from veronese_lab import classify, classify_plane, classify_quadric_p3
from veronese_lab.constructions import cone_config, nodal_cubic_config, plane_pair_config
from veronese_lab.sampling import make_rng


def show(title, rep, special):
    fired = ", ".join(c.value for c in rep.sufficient_conditions_fired) or "none"
    reason = f" ({rep.reason.value})" if rep.reason else ""
    print(f"{title:<34} {rep.verdict.value}{reason}")
    print(f"{'':<34} hypersurfaces={rep.kernel_dim} marked singular points={len(rep.q or ())}"
          f" criteria fired: {fired}")
    print(f"{'':<34} closed form agrees: {(special.verdict, special.reason) == (rep.verdict, rep.reason)}")


rng = make_rng(2024)

for copies in (1, 2):
    cfg = nodal_cubic_config(10 - copies, copies, rng)
    show(f"nodal cubic, node x{copies}", classify(cfg, 3), classify_plane(cfg, 3))

for k in (1, 2, 3, 4):
    cfg = plane_pair_config([1] * k, (6, 4), rng)
    show(f"plane pair, {k} on the line", classify(cfg, 2), classify_quadric_p3(cfg))

for copies in (1, 2):
    cfg = cone_config(10, copies, rng)
    show(f"quadric cone, vertex x{copies}", classify(cfg, 2), classify_quadric_p3(cfg))
