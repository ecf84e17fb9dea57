"""Exact point configurations on prescribed hypersurfaces.

Rational points on a random hypersurface are produced by secant
constructions: a line through a known point of a quadric meets it again in
a rational point, and a chord through two known points of a cubic meets it
in a third.  Used by the test-suite and the demo scripts.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import PreconditionError
from .exactcore import FieldSpec, RATIONALS, rank
from .sampling import random_element, random_point
from .singular import quadric_matrix
from .variety import hypersurface_system, line_restriction
from .veronese import HypersurfaceForm, PointConfig, ProjPoint, gradient_eval, monomial_basis, num_monomials

__all__ = [
    "second_intersection",
    "third_intersection",
    "sample_on_hypersurface",
    "random_hypersurface_config",
    "random_form_through",
    "nodal_cubic",
    "nodal_cubic_point",
    "cone_quadric",
    "plane_pair_quadric",
    "line_pair_conic",
    "nodal_cubic_config",
    "cone_config",
    "plane_pair_config",
    "line_pair_config",
    "random_real_quadric",
    "real_quadric_cloud",
    "quadric_coefficients",
]


def second_intersection(F: HypersurfaceForm, p: ProjPoint, v: ProjPoint) -> ProjPoint | None:
    """Other intersection of the quadric ``F`` with the line through ``p`` (on F) and ``v``."""
    f = F.field
    # F(p + t v) = t * <grad F(p), v> + t^2 F(v)
    lin = f.dot(gradient_eval(F, p), v.coords)
    quad = F(v)
    if lin == 0 or quad == 0:
        return None
    t = f.neg(f.div(lin, quad))
    return ProjPoint(tuple(f.add(a, f.mul(t, b)) for a, b in zip(p.coords, v.coords)), f)


def third_intersection(F: HypersurfaceForm, a: ProjPoint, b: ProjPoint) -> ProjPoint | None:
    """Third intersection of the cubic ``F`` with the chord through ``a`` and ``b``."""
    f = F.field
    c = line_restriction(F, a, b).coeffs  # s^3, s^2 t, s t^2, t^3
    if c[1] == 0 and c[2] == 0:
        return None
    # F(s a + t b) = s t (c1 s + c2 t)
    coords = tuple(f.sub(f.mul(c[2], x), f.mul(c[1], y)) for x, y in zip(a.coords, b.coords))
    return ProjPoint(coords, f)


def sample_on_hypersurface(F: HypersurfaceForm, known: list[ProjPoint], count: int,
                           rng: np.random.Generator, max_tries: int = 1000) -> list[ProjPoint]:
    """``count`` new points on a quadric or cubic, distinct from ``known`` and each other."""
    if F.d not in (2, 3):
        raise PreconditionError("secant sampling is implemented for degrees 2 and 3")
    pts = list(known)
    seen = set(pts)
    out: list[ProjPoint] = []
    for _ in range(max_tries):
        if len(out) == count:
            return out
        if F.d == 2:
            base = pts[int(rng.integers(len(pts)))]
            new = second_intersection(F, base, random_point(F.r, F.field, rng))
        else:
            i, j = rng.choice(len(pts), size=2, replace=False)
            new = third_intersection(F, pts[int(i)], pts[int(j)])
        if new is None or new in seen:
            continue
        seen.add(new)
        pts.append(new)
        out.append(new)
    raise PreconditionError(f"could not sample {count} points in {max_tries} attempts")


def random_form_through(points: list[ProjPoint], d: int, rng: np.random.Generator) -> HypersurfaceForm:
    """A random member of the linear system of degree-d forms through ``points``."""
    field = points[0].field
    system = hypersurface_system(PointConfig(tuple(points), field), d)
    if system.m == 0:
        raise PreconditionError("no hypersurface through the given points")
    while True:
        weights = [random_element(field, rng) for _ in system.forms]
        coeffs = [field.zero()] * len(system.forms[0].coeffs)
        for w, F in zip(weights, system.forms):
            coeffs = [field.add(c, field.mul(w, a)) for c, a in zip(coeffs, F.coeffs)]
        if any(c != 0 for c in coeffs):
            return HypersurfaceForm(system.forms[0].basis, tuple(coeffs), field)


def random_hypersurface_config(r: int, d: int, n: int, rng: np.random.Generator,
                               field: FieldSpec = RATIONALS, smooth_quadric: bool = True,
                               max_tries: int = 50) -> tuple[HypersurfaceForm, PointConfig]:
    """A random degree-d hypersurface and ``n`` distinct points on it, shuffled.

    The hypersurface is the unique one through ``b(r,d) - 1`` random points
    (quadrics are resampled until nondegenerate when ``smooth_quadric``).
    Every returned point is checked to be a nonsingular point of it.
    """
    b = num_monomials(r, d)
    for _ in range(max_tries):
        base = list(dict.fromkeys(random_point(r, field, rng) for _ in range(b - 1)))
        if len(base) < b - 1:
            continue
        system = hypersurface_system(PointConfig(tuple(base), field), d)
        if system.m != 1:
            continue
        F = system.forms[0]
        if d == 2 and smooth_quadric and rank(quadric_matrix(F)) < r + 1:
            continue
        if any(all(g == 0 for g in gradient_eval(F, p)) for p in base):
            continue
        if n <= len(base):
            pts = base[:n]
        else:
            try:
                extra = sample_on_hypersurface(F, base, n - len(base), rng)
            except PreconditionError:
                continue
            if any(all(g == 0 for g in gradient_eval(F, p)) for p in extra):
                continue
            pts = base + extra
        order = rng.permutation(len(pts))
        return F, PointConfig(tuple(pts[int(i)] for i in order), field)
    raise PreconditionError("random_hypersurface_config: too many degenerate samples")


def nodal_cubic(field: FieldSpec = RATIONALS) -> HypersurfaceForm:
    """``x0 x2^2 - x1^2 (x1 + x0)``, with its node at ``[1:0:0]``."""
    return HypersurfaceForm.from_terms(2, 3, {(1, 0, 2): 1, (0, 3, 0): -1, (1, 2, 0): -1}, field)


def nodal_cubic_point(t, field: FieldSpec = RATIONALS) -> ProjPoint:
    """Rational parametrization ``[1 : t^2 - 1 : t (t^2 - 1)]`` (t = +-1 give the node)."""
    t = Fraction(t)
    return ProjPoint((1, t * t - 1, t * (t * t - 1)), field)


def cone_quadric(field: FieldSpec = RATIONALS) -> HypersurfaceForm:
    """Quadric cone ``x0 x2 - x1^2`` in P^3 with vertex ``[0:0:0:1]``."""
    return HypersurfaceForm.from_terms(3, 2, {(1, 0, 1, 0): 1, (0, 2, 0, 0): -1}, field)


def plane_pair_quadric(field: FieldSpec = RATIONALS) -> HypersurfaceForm:
    """``x0 x1`` in P^3; singular along the line ``x0 = x1 = 0``."""
    return HypersurfaceForm.from_terms(3, 2, {(1, 1, 0, 0): 1}, field)


def line_pair_conic(field: FieldSpec = RATIONALS) -> HypersurfaceForm:
    """``x1 x2`` in P^2; the two lines cross at ``[1:0:0]``."""
    return HypersurfaceForm.from_terms(2, 2, {(0, 1, 1): 1}, field)


def _nonzero(field: FieldSpec, rng: np.random.Generator):
    while True:
        x = random_element(field, rng)
        if x != 0:
            return x


def _distinct(make, count: int) -> list[ProjPoint]:
    out: dict[ProjPoint, None] = {}
    while len(out) < count:
        out.setdefault(make(), None)
    return list(out)


def nodal_cubic_config(smooth_points: int, node_copies: int, rng: np.random.Generator,
                       field: FieldSpec = RATIONALS) -> PointConfig:
    """Distinct smooth points of :func:`nodal_cubic` plus the node repeated ``node_copies`` times."""
    def make():
        t = random_element(field, rng)
        return ProjPoint((1, field.sub(field.mul(t, t), 1), field.mul(t, field.sub(field.mul(t, t), 1))), field)

    node = ProjPoint((1, 0, 0), field)
    smooth = [p for p in _distinct(make, smooth_points + 1) if p != node][:smooth_points]
    pts = smooth + [node] * node_copies
    order = rng.permutation(len(pts))
    return PointConfig(tuple(pts[int(i)] for i in order), field)


def cone_config(smooth_points: int, vertex_copies: int, rng: np.random.Generator,
                field: FieldSpec = RATIONALS) -> PointConfig:
    """Points ``[s^2 : s t : t^2 : u]`` of :func:`cone_quadric` plus copies of its vertex."""
    def make():
        s, t = random_element(field, rng), _nonzero(field, rng)
        u = random_element(field, rng)
        return ProjPoint((field.mul(s, s), field.mul(s, t), field.mul(t, t), u), field)

    pts = _distinct(make, smooth_points) + [ProjPoint((0, 0, 0, 1), field)] * vertex_copies
    order = rng.permutation(len(pts))
    return PointConfig(tuple(pts[int(i)] for i in order), field)


def plane_pair_config(on_line: list[int], per_plane: tuple[int, int], rng: np.random.Generator,
                      field: FieldSpec = RATIONALS) -> PointConfig:
    """Points of :func:`plane_pair_quadric`.

    ``on_line`` lists multiplicities of distinct points on the singular line
    ``x0 = x1 = 0``; ``per_plane`` counts points off that line on ``x0 = 0``
    and on ``x1 = 0``.
    """
    def line_pt():
        return ProjPoint((0, 0, random_element(field, rng), _nonzero(field, rng)), field)

    def plane0():
        return ProjPoint((0, _nonzero(field, rng), random_element(field, rng), random_element(field, rng)), field)

    def plane1():
        return ProjPoint((_nonzero(field, rng), 0, random_element(field, rng), random_element(field, rng)), field)

    pts = [p for p, k in zip(_distinct(line_pt, len(on_line)), on_line) for _ in range(k)]
    pts += _distinct(plane0, per_plane[0]) + _distinct(plane1, per_plane[1])
    order = rng.permutation(len(pts))
    return PointConfig(tuple(pts[int(i)] for i in order), field)


def line_pair_config(per_line: tuple[int, int], crossing_copies: int, rng: np.random.Generator,
                     field: FieldSpec = RATIONALS) -> PointConfig:
    """Points of :func:`line_pair_conic` off the crossing, plus copies of ``[1:0:0]``."""
    def line1():
        return ProjPoint((random_element(field, rng), 0, _nonzero(field, rng)), field)

    def line2():
        return ProjPoint((random_element(field, rng), _nonzero(field, rng), 0), field)

    pts = _distinct(line1, per_line[0]) + _distinct(line2, per_line[1])
    pts += [ProjPoint((1, 0, 0), field)] * crossing_copies
    order = rng.permutation(len(pts))
    return PointConfig(tuple(pts[int(i)] for i in order), field)


def random_real_quadric(r: int, rng: np.random.Generator) -> np.ndarray:
    """Symmetric ``(r+1) x (r+1)`` matrix of an indefinite real quadric (so it has real points)."""
    while True:
        a = rng.standard_normal((r + 1, r + 1))
        A = (a + a.T) / 2
        ev = np.linalg.eigvalsh(A)
        if ev[0] < -0.1 and ev[-1] > 0.1:
            return A


def quadric_coefficients(A: np.ndarray) -> np.ndarray:
    """Unit coefficient vector of ``x^T A x`` in the graded-lex degree-2 basis."""
    exps = monomial_basis(A.shape[0] - 1, 2).exponents
    out = np.zeros(len(exps))
    for k, exp in enumerate(exps):
        idx = [j for j, e in enumerate(exp) for _ in range(e)]
        i, j = idx
        out[k] = A[i, i] if i == j else 2 * A[i, j]
    return out / np.linalg.norm(out)


def real_quadric_cloud(A: np.ndarray, n: int, rng: np.random.Generator) -> np.ndarray:
    """``n`` unit-norm real points on ``x^T A x = 0``, found by intersecting random lines."""
    size = A.shape[0]
    pts = []
    while len(pts) < n:
        p, v = rng.standard_normal(size), rng.standard_normal(size)
        # (p + t v)^T A (p + t v) = qa t^2 + qb t + qc
        qa, qb, qc = v @ A @ v, 2 * (p @ A @ v), p @ A @ p
        disc = qb * qb - 4 * qa * qc
        if abs(qa) < 1e-3 or disc < 0:
            continue
        t = (-qb + rng.choice([-1.0, 1.0]) * np.sqrt(disc)) / (2 * qa)
        x = p + t * v
        pts.append(x / np.linalg.norm(x))
    return np.array(pts)
