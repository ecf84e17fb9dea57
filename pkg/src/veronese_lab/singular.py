"""Smooth and singular configurations.

A configuration ``p`` with ``n >= b(r,d)`` points that lies on a unique
degree-d hypersurface ``S`` is a smooth point of the configuration variety
iff the marked points sitting in ``Sing(S)`` are pairwise distinct and
impose independent conditions on degree-d forms (``d``-normality).  Two or
more independent hypersurfaces through ``p`` always give a singular point.

The module also carries the finite point set invariants used by that test
(d-normality, Castelnuovo-Mumford regularity, secant lines, k-generality),
the cheap sufficient criteria, and two closed-form classifiers for plane
curves and quadric surfaces.

Only the marked points themselves are tested for membership in ``Sing(S)``.
They have coordinates in the working field, so singular points of ``S`` that
are defined only over an extension never enter the decision.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Sequence

from .errors import CapExceededError, PreconditionError
from .exactcore import DEFAULT_MINOR_CAP, ExactMatrix, FieldSpec, kernel_basis, rank
from .variety import MembershipVerdict, hypersurface_system
from .veronese import (
    HypersurfaceForm,
    PointConfig,
    ProjPoint,
    gradient_eval,
    multi_veronese,
    num_monomials,
)

__all__ = [
    "Verdict",
    "Reason",
    "Criterion",
    "Capped",
    "SingularSupport",
    "ClassificationReport",
    "SpecialVerdict",
    "singular_support",
    "span_dimension",
    "is_d_normal",
    "regularity_of_points",
    "max_secant",
    "k_generality",
    "classify",
    "classify_plane",
    "classify_quadric_p3",
    "quadric_matrix",
    "DEFAULT_KGEN_CAP",
    "DEFAULT_SECANT_CAP",
]

DEFAULT_KGEN_CAP = 6
DEFAULT_SECANT_CAP = 200


class Verdict(str, Enum):
    NOT_ON_VARIETY = "NotOnVariety"
    SMOOTH_AMBIENT = "SmoothAmbient"
    SMOOTH = "Smooth"
    SINGULAR = "Singular"


class Reason(str, Enum):
    MULTIPLE_HYPERSURFACES = "MultipleHypersurfaces"
    COINCIDENT_SINGULAR_POINTS = "CoincidentSingularPoints"
    NOT_D_NORMAL = "NotDNormal"


class Criterion(str, Enum):
    """Sufficient conditions checked alongside the exact test."""

    # force a singular point
    TOO_MANY_SINGULAR_POINTS = "too_many_singular_points"  # |q| > b(r,d)
    SECANT_LINE = "d_plus_2_secant_line"  # some line meets q in >= d+2 points
    # force a smooth point (q distinct)
    SPAN_EXCESS = "span_excess_at_most_d"  # |q| - dim<q> <= d
    FEW_POINTS = "at_most_d_plus_1_points"  # |q| <= d+1
    GENERALITY_BOUND = "generality_bound"  # char 0 only
    LINEARLY_GENERAL = "linearly_general_bound"  # char 0 only

    @property
    def implies_singular(self) -> bool:
        return self in (Criterion.TOO_MANY_SINGULAR_POINTS, Criterion.SECANT_LINE)


@dataclass(frozen=True)
class Capped:
    """k-generality reached the search cap; the true value is at least ``cap``."""

    cap: int

    def __str__(self):
        return "capped"


@dataclass(frozen=True)
class SingularSupport:
    indices: tuple[int, ...]
    distinct_points: tuple[ProjPoint, ...]
    has_duplicates: bool

    def __len__(self):
        return len(self.indices)


@dataclass
class ClassificationReport:
    membership: MembershipVerdict
    kernel_dim: int
    verdict: Verdict
    reason: Reason | None = None
    hypersurface: HypersurfaceForm | None = None
    q: SingularSupport | None = None
    regularity_of_q: int | None = None
    max_secant_of_q: int | None = None
    t_generality_of_q: int | Capped | None = None
    sufficient_conditions_fired: list = dc_field(default_factory=list)
    char_warnings: list = dc_field(default_factory=list)

    @property
    def is_smooth(self) -> bool:
        return self.verdict in (Verdict.SMOOTH, Verdict.SMOOTH_AMBIENT)


@dataclass(frozen=True)
class SpecialVerdict:
    """Result of the closed-form plane/quadric classifiers."""

    verdict: Verdict
    reason: Reason | None
    kernel_dim: int
    quadric_rank: int | None = None
    inconsistent: bool = False


def _require_distinct(pts: Sequence[ProjPoint]) -> None:
    if len(set(pts)) != len(pts):
        raise PreconditionError("points must be pairwise distinct (reduced scheme required)")


def singular_support(F: HypersurfaceForm, cfg: PointConfig) -> SingularSupport:
    """Indices of the marked points where every partial derivative of F vanishes."""
    indices = []
    for i, p in enumerate(cfg):
        if F(p) != 0:
            raise PreconditionError(f"point not on hypersurface: points[{i}] = {p!r}")
        if all(g == 0 for g in gradient_eval(F, p)):
            indices.append(i)
    distinct = tuple(dict.fromkeys(cfg[i] for i in indices))
    return SingularSupport(tuple(indices), distinct, len(distinct) < len(indices))


def _coordinate_matrix(pts: Sequence[ProjPoint]) -> ExactMatrix:
    return ExactMatrix._trusted([list(p.coords) for p in pts], len(pts[0].coords), pts[0].field)


def span_dimension(pts: Sequence[ProjPoint]) -> int:
    """Projective dimension of the linear span (``-1`` for the empty set)."""
    if not pts:
        return -1
    return rank(_coordinate_matrix(pts)) - 1


def is_d_normal(pts: Sequence[ProjPoint], d: int) -> bool:
    """Do the distinct points ``pts`` impose independent conditions on degree-d forms?"""
    pts = list(pts)
    _require_distinct(pts)
    if d < 0:
        raise PreconditionError(f"degree must be >= 0, got {d}")
    if not pts:
        return True
    if d == 0:
        return len(pts) <= 1
    if len(pts) > num_monomials(pts[0].ambient_dim, d):
        return False
    cfg = PointConfig(tuple(pts), pts[0].field)
    return rank(multi_veronese(cfg, d)) == len(pts)


def regularity_of_points(pts: Sequence[ProjPoint]) -> int:
    """Castelnuovo-Mumford regularity of the ideal of a set of distinct points.

    Equals ``1 + min{d : pts is d-normal}``; the search stops at
    ``|pts| - dim<pts>``, where normality is guaranteed.  By convention the
    empty set has regularity 0.
    """
    pts = list(pts)
    _require_distinct(pts)
    if not pts:
        return 0
    bound = len(pts) - span_dimension(pts)
    for d in range(bound + 1):
        if is_d_normal(pts, d):
            return d + 1
    raise AssertionError(f"points not {bound}-normal; exact arithmetic is broken")


def max_secant(pts: Sequence[ProjPoint], cap: int = DEFAULT_SECANT_CAP) -> tuple[int, tuple[int, int]]:
    """Largest number of points on a line spanned by two of them, with a witness pair."""
    pts = list(pts)
    if len(pts) < 2:
        raise PreconditionError("max_secant needs at least 2 points")
    if len(pts) > cap:
        raise CapExceededError(f"max_secant: {len(pts)} points exceed cap {cap}")
    _require_distinct(pts)
    f = pts[0].field
    best, witness = 0, (0, 1)
    for i in range(len(pts)):
        seen: set[int] = set()
        for j in range(i + 1, len(pts)):
            if j in seen:
                continue
            # linear forms cutting out the line through p_i, p_j
            eqs = kernel_basis(_coordinate_matrix([pts[i], pts[j]]))
            on_line = [k for k, p in enumerate(pts) if all(f.dot(e, p.coords) == 0 for e in eqs)]
            seen.update(on_line)
            if len(on_line) > best:
                best, witness = len(on_line), (i, j)
    return best, witness


def k_generality(pts: Sequence[ProjPoint], cap: int = DEFAULT_KGEN_CAP,
                 subset_cap: int = DEFAULT_MINOR_CAP) -> int | Capped:
    """Largest k such that every k+1 of the points are linearly independent.

    Returns :class:`Capped` when the points are ``cap``-general and the true
    value might be larger.
    """
    pts = list(pts)
    if len(pts) < 2:
        raise PreconditionError("k_generality needs at least 2 points")
    _require_distinct(pts)
    upper = min(len(pts) - 1, span_dimension(pts))
    k = 1  # two distinct points are always independent
    while k < upper:
        if k >= cap:
            return Capped(cap)
        size = k + 2
        count = math.comb(len(pts), size)
        if count > subset_cap:
            raise CapExceededError(f"cap-kgen: {count} subsets of size {size} exceed cap {subset_cap}")
        if any(rank(_coordinate_matrix([pts[i] for i in sub])) < size
               for sub in itertools.combinations(range(len(pts)), size)):
            break
        k += 1
    return k


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _fire_criteria(report: ClassificationReport, d: int, b: int, field: FieldSpec, kgen_cap: int) -> None:
    q = report.q
    Z = list(q.distinct_points)
    fired = report.sufficient_conditions_fired
    if len(Z) > b:
        fired.append(Criterion.TOO_MANY_SINGULAR_POINTS)
    if len(Z) >= 2:
        report.max_secant_of_q = max_secant(Z)[0]
        if report.max_secant_of_q >= d + 2:
            fired.append(Criterion.SECANT_LINE)
    else:
        report.max_secant_of_q = len(Z)
    if q.has_duplicates:
        return
    span = span_dimension(Z)
    if len(Z) - span <= d:
        fired.append(Criterion.SPAN_EXCESS)
    if len(Z) <= d + 1:
        fired.append(Criterion.FEW_POINTS)
    if len(Z) < 2:
        return
    t = k_generality(Z, kgen_cap)
    report.t_generality_of_q = t
    if field.characteristic != 0:
        report.char_warnings.append(
            "generality-based smoothness criteria skipped: they require characteristic 0"
        )
        return
    t_low = t.cap if isinstance(t, Capped) else t
    if d >= _ceil_div(len(Z) - span - 1, t_low) + 1:
        fired.append(Criterion.GENERALITY_BOUND)
    if not isinstance(t, Capped) and t == span and d >= _ceil_div(len(Z) - 1, span):
        fired.append(Criterion.LINEARLY_GENERAL)


def classify(cfg: PointConfig, d: int, kgen_cap: int = DEFAULT_KGEN_CAP) -> ClassificationReport:
    """Decide whether ``cfg`` is a smooth or singular point of the degree-d configuration variety.

    Decision order: fewer than ``b(r,d)`` points (the variety is all of
    ``(P^r)^n``), no hypersurface, several hypersurfaces, then for a unique
    hypersurface the coincidence and d-normality test on its singular
    marked points.
    """
    b = num_monomials(cfg.r, d)
    system = hypersurface_system(cfg, d)
    m = system.m
    verdict = MembershipVerdict(member=m >= 1, rank=b - m, kernel_dim=m,
                                trivially_member=cfg.n < b, m_requested=1)
    report = ClassificationReport(membership=verdict, kernel_dim=m, verdict=Verdict.SMOOTH_AMBIENT)
    if cfg.n < b:
        return report
    if m == 0:
        report.verdict = Verdict.NOT_ON_VARIETY
        return report
    if m >= 2:
        report.verdict, report.reason = Verdict.SINGULAR, Reason.MULTIPLE_HYPERSURFACES
        return report

    F = system.forms[0]
    q = singular_support(F, cfg)
    report.hypersurface, report.q = F, q
    if q.has_duplicates:
        report.verdict, report.reason = Verdict.SINGULAR, Reason.COINCIDENT_SINGULAR_POINTS
    else:
        report.regularity_of_q = regularity_of_points(q.distinct_points)
        if is_d_normal(q.distinct_points, d):
            report.verdict = Verdict.SMOOTH
        else:
            report.verdict, report.reason = Verdict.SINGULAR, Reason.NOT_D_NORMAL
    _fire_criteria(report, d, b, cfg.field, kgen_cap)
    return report


def _special_prefix(cfg: PointConfig, d: int) -> tuple[SpecialVerdict | None, HypersurfaceForm | None]:
    b = num_monomials(cfg.r, d)
    system = hypersurface_system(cfg, d)
    m = system.m
    if cfg.n < b:
        return SpecialVerdict(Verdict.SMOOTH_AMBIENT, None, m), None
    if m == 0:
        return SpecialVerdict(Verdict.NOT_ON_VARIETY, None, 0), None
    if m >= 2:
        return SpecialVerdict(Verdict.SINGULAR, Reason.MULTIPLE_HYPERSURFACES, m), None
    return None, system.forms[0]


def classify_plane(cfg: PointConfig, d: int) -> SpecialVerdict:
    """Plane curves in characteristic 0: smooth iff the curve is unique and
    the marked points in its singular locus are distinct."""
    if cfg.r != 2:
        raise PreconditionError(f"classify_plane needs points in P^2, got P^{cfg.r}")
    if cfg.field.characteristic != 0:
        raise PreconditionError("theorem requires char 0")
    early, F = _special_prefix(cfg, d)
    if early is not None:
        return early
    q = singular_support(F, cfg)
    if q.has_duplicates:
        return SpecialVerdict(Verdict.SINGULAR, Reason.COINCIDENT_SINGULAR_POINTS, 1)
    return SpecialVerdict(Verdict.SMOOTH, None, 1)


def quadric_matrix(F: HypersurfaceForm) -> ExactMatrix:
    """Symmetric matrix ``A`` with ``F(x) = x^T A x`` (needs char != 2)."""
    if F.d != 2:
        raise PreconditionError("quadric_matrix needs a degree-2 form")
    f = F.field
    size = F.r + 1
    A = [[f.zero()] * size for _ in range(size)]
    half = f.inv(f.scalar(2))
    for exp, c in zip(F.basis.exponents, F.coeffs):
        idx = [j for j, e in enumerate(exp) for _ in range(e)]
        i, j = idx
        if i == j:
            A[i][i] = c
        else:
            A[i][j] = A[j][i] = f.mul(c, half)
    return ExactMatrix._trusted(A, size, f)


def classify_quadric_p3(cfg: PointConfig) -> SpecialVerdict:
    """Ten or more points on quadric surfaces, by the rank of the quadric.

    rank 4: smooth.  rank 3 (cone): smooth iff the vertex is marked at most
    once.  rank 2 (plane pair): smooth iff at most three marked points lie on
    the singular line and they are distinct.  A unique rank-1 quadric cannot
    occur; it is reported as singular and flagged ``inconsistent``.
    """
    if cfg.r != 3:
        raise PreconditionError(f"classify_quadric_p3 needs points in P^3, got P^{cfg.r}")
    if cfg.field.characteristic == 2:
        raise PreconditionError("theorem requires char != 2")
    early, F = _special_prefix(cfg, 2)
    if early is not None:
        return early
    A = quadric_matrix(F)
    rho = rank(A)
    on_sing = [p for p in cfg if all(x == 0 for x in A.apply(p.coords))]
    distinct = len(set(on_sing)) == len(on_sing)
    if rho == 4:
        return SpecialVerdict(Verdict.SMOOTH, None, 1, rho)
    if rho == 3:
        if len(on_sing) <= 1:
            return SpecialVerdict(Verdict.SMOOTH, None, 1, rho)
        return SpecialVerdict(Verdict.SINGULAR, Reason.COINCIDENT_SINGULAR_POINTS, 1, rho)
    if rho == 2:
        if not distinct:
            return SpecialVerdict(Verdict.SINGULAR, Reason.COINCIDENT_SINGULAR_POINTS, 1, rho)
        if len(on_sing) <= 3:
            return SpecialVerdict(Verdict.SMOOTH, None, 1, rho)
        return SpecialVerdict(Verdict.SINGULAR, Reason.NOT_D_NORMAL, 1, rho)
    return SpecialVerdict(Verdict.SINGULAR, None, 1, rho, inconsistent=True)
