"""Membership in the configuration varieties and the hypersurfaces through a configuration.

A configuration ``p`` of ``n`` points lies on ``m`` independent degree-``d``
hypersurfaces exactly when its multi-Veronese matrix ``M`` (``b(r,d) x n``)
has rank at most ``b(r,d) - m``; the hypersurfaces themselves are the kernel
of ``M^T``.

Membership is set-theoretic.  For ``m = 1`` the determinantal scheme is
reduced so nothing is lost; for ``m >= 2`` the scheme structure may carry
nilpotents and is not modelled here.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import InvalidInputError, PreconditionError
from .exactcore import ExactMatrix, FieldSpec, determinant, kernel_basis, rank, solve
from .sampling import make_rng, random_point
from .veronese import (
    HypersurfaceForm,
    PointConfig,
    ProjPoint,
    gradient_eval,
    monomial_basis,
    multi_veronese,
    num_monomials,
    veronese_eval,
)

__all__ = [
    "MembershipVerdict",
    "LinearSystem",
    "LineRestriction",
    "MultidegreeReport",
    "membership",
    "membership_p1_oracle",
    "hypersurface_system",
    "unique_hypersurface",
    "recover_coefficients_local",
    "incidence_jacobian",
    "expected_dimension",
    "line_restriction",
    "line_restriction_degree",
    "multidegree_check",
    "DEFAULT_MAX_RETRIES",
]

DEFAULT_MAX_RETRIES = 20


@dataclass(frozen=True)
class MembershipVerdict:
    member: bool
    rank: int
    kernel_dim: int
    trivially_member: bool
    m_requested: int = 1


@dataclass(frozen=True)
class LinearSystem:
    """Basis of the degree-d forms vanishing on a configuration."""

    d: int
    forms: tuple[HypersurfaceForm, ...]

    @property
    def m(self) -> int:
        return len(self.forms)

    def __len__(self):
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)


def membership(cfg: PointConfig, d: int, m: int = 1) -> MembershipVerdict:
    """Does ``cfg`` lie on ``m`` linearly independent degree-``d`` hypersurfaces?"""
    b = num_monomials(cfg.r, d)
    if m >= b:
        raise PreconditionError(f"empty variety: m={m} >= b({cfg.r},{d})={b}")
    if m < 1:
        raise PreconditionError(f"m must be >= 1, got {m}")
    rk = rank(multi_veronese(cfg, d))
    return MembershipVerdict(
        member=rk <= b - m,
        rank=rk,
        kernel_dim=b - rk,
        trivially_member=cfg.n < b - m + 1,
        m_requested=m,
    )


def membership_p1_oracle(cfg: PointConfig, d: int) -> bool:
    """On the projective line: a degree-d form vanishes on at most d distinct points."""
    if cfg.r != 1:
        raise PreconditionError(f"the support-count oracle needs r = 1, got r = {cfg.r}")
    return len(set(cfg.points)) <= d


def hypersurface_system(cfg: PointConfig, d: int) -> LinearSystem:
    """All degree-d hypersurfaces through ``cfg``, as a basis of ``ker M^T``."""
    M = multi_veronese(cfg, d)
    basis = monomial_basis(cfg.r, d)
    forms = tuple(HypersurfaceForm(basis, v, cfg.field) for v in kernel_basis(M.transpose()))
    return LinearSystem(d, forms)


def unique_hypersurface(cfg: PointConfig, d: int) -> HypersurfaceForm:
    system = hypersurface_system(cfg, d)
    if system.m != 1:
        raise PreconditionError(f"hypersurface not unique: {system.m} independent degree-{d} forms")
    return system.forms[0]


def recover_coefficients_local(cfg: PointConfig, d: int) -> HypersurfaceForm:
    """Coefficients of the unique hypersurface from one invertible maximal minor.

    Picks the lexicographically first set ``J`` of ``b-1`` independent
    columns of ``M``, then the first row ``K`` whose removal leaves
    ``M[K^, J]`` invertible, and solves ``A[K^] = -M[K, J] M[K^, J]^-1``
    with ``A[K] = 1``.  Independent of the kernel computation used by
    :func:`hypersurface_system`.
    """
    M = multi_veronese(cfg, d)
    b = M.rows
    kdim = b - rank(M)
    if kdim != 1:
        raise PreconditionError(f"hypersurface not unique: kernel dimension {kdim}")
    J: list[int] = []
    for j in range(M.cols):
        if rank(M.submatrix(range(b), J + [j])) == len(J) + 1:
            J.append(j)
            if len(J) == b - 1:
                break
    for K in range(b):
        rest = [i for i in range(b) if i != K]
        sub = M.submatrix(rest, J)
        if determinant(sub) != 0:
            break
    else:  # pragma: no cover - impossible when rank(M[:, J]) = b - 1
        raise PreconditionError("no invertible maximal minor found")
    f = cfg.field
    rhs = [f.neg(M[K, j]) for j in J]
    a_rest = solve(sub.transpose(), rhs)
    coeffs = list(a_rest)
    coeffs.insert(K, f.one())
    return HypersurfaceForm(monomial_basis(cfg.r, d), tuple(coeffs), f)


def _check_on_hypersurface(F: HypersurfaceForm, cfg: PointConfig) -> None:
    if F.r != cfg.r:
        raise InvalidInputError(f"form lives in P^{F.r}, configuration in P^{cfg.r}")
    if F.field != cfg.field:
        raise InvalidInputError("form and configuration are over different fields")
    for i, p in enumerate(cfg):
        if F(p) != 0:
            raise PreconditionError(f"point not on hypersurface: points[{i}] = {p!r}")


def incidence_jacobian(F: HypersurfaceForm, cfg: PointConfig) -> ExactMatrix:
    """Jacobian ``[L | R]`` of the incidence scheme at ``(F, cfg)``.

    Row i is ``v(p_i)`` followed by ``n`` blocks of width ``r+1``, all zero
    except block i which holds ``grad F(p_i)``.  The incidence scheme is
    smooth at ``(F, cfg)`` iff the rank is ``n``.
    """
    _check_on_hypersurface(F, cfg)
    f = cfg.field
    n, w = cfg.n, cfg.r + 1
    rows = []
    for i, p in enumerate(cfg):
        right = [f.zero()] * (n * w)
        right[i * w:(i + 1) * w] = gradient_eval(F, p)
        rows.append(list(veronese_eval(p, F.basis)) + right)
    return ExactMatrix._trusted(rows, len(F.basis) + n * w, f)


def expected_dimension(r: int, d: int, n: int) -> int:
    """Dimension of the variety of n-point configurations on a degree-d hypersurface in P^r."""
    b = num_monomials(r, d)
    if n < b:
        return n * r
    return b - 1 + n * (r - 1)


@dataclass(frozen=True)
class LineRestriction:
    """``F(s*a + t*b)`` as a binary form; ``coeffs[k]`` multiplies ``s^(d-k) t^k``."""

    coeffs: tuple
    d: int

    @property
    def identically_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def degree(self) -> int | None:
        """Degree of the binary form, or ``None`` when the line lies in the hypersurface."""
        return None if self.identically_zero else self.d


def _poly_mul(u: list, v: list, f: FieldSpec) -> list:
    out = [f.zero()] * (len(u) + len(v) - 1)
    for i, x in enumerate(u):
        if x == 0:
            continue
        for j, y in enumerate(v):
            out[i + j] = f.add(out[i + j], f.mul(x, y))
    return out


def line_restriction(F: HypersurfaceForm, a: ProjPoint, b: ProjPoint) -> LineRestriction:
    if a == b:
        raise PreconditionError("line_restriction needs two distinct points")
    if a.ambient_dim != F.r or b.ambient_dim != F.r:
        raise InvalidInputError("points and form live in different projective spaces")
    f = F.field
    # powers of the linear forms (a_j s + b_j t), as coefficient lists in t/s
    lin = [[aj, bj] for aj, bj in zip(a.coords, b.coords)]
    powers = []
    for ell in lin:
        pw = [[f.one()]]
        for _ in range(F.d):
            pw.append(_poly_mul(pw[-1], ell, f))
        powers.append(pw)
    total = [f.zero()] * (F.d + 1)
    for exp, c in zip(F.basis.exponents, F.coeffs):
        if c == 0:
            continue
        term = [c]
        for j, e in enumerate(exp):
            if e:
                term = _poly_mul(term, powers[j][e], f)
        for k, x in enumerate(term):
            total[k] = f.add(total[k], x)
    return LineRestriction(tuple(total), F.d)


def line_restriction_degree(F: HypersurfaceForm, a: ProjPoint, b: ProjPoint) -> int | None:
    return line_restriction(F, a, b).degree


@dataclass
class MultidegreeReport:
    r: int
    d: int
    n: int
    trials: int
    seed: int
    field: FieldSpec
    passes: int = 0
    failures: int = 0
    failed_trials: list = dc_field(default_factory=list)
    degenerate_resamples: int = 0

    @property
    def lines(self) -> int:
        return self.n - num_monomials(self.r, self.d) + 1

    @property
    def expected_value(self) -> int:
        return self.d ** self.lines

    @property
    def ok(self) -> bool:
        return self.failures == 0 and self.passes == self.trials


def multidegree_check(r: int, d: int, n: int, trials: int, seed: int,
                      field: FieldSpec = FieldSpec(1000003),
                      max_retries: int = DEFAULT_MAX_RETRIES) -> MultidegreeReport:
    """Probe the nonzero multidegree by random points and lines.

    Each trial picks ``b-1`` random points (resampled until they determine a
    unique hypersurface ``S``) and ``n-b+1`` random lines; it passes when
    every line meets ``S`` in a restriction of degree exactly ``d``, i.e.
    ``d`` intersections counted with multiplicity over the algebraic closure.
    Trial ``i`` uses its own stream ``(seed, i)``.
    """
    b = num_monomials(r, d)
    if n < b:
        raise PreconditionError(f"multidegree check needs n >= b({r},{d}) = {b}, got n = {n}")
    p = field.characteristic
    if p and p < 100 * d * n:
        raise PreconditionError(f"field too small: F_{p} for d={d}, n={n} (need p >= {100 * d * n})")
    report = MultidegreeReport(r, d, n, trials, seed, field)
    for t in range(trials):
        rng = make_rng(seed, t)
        for attempt in range(max_retries):
            cfg = PointConfig(tuple(random_point(r, field, rng) for _ in range(b - 1)), field)
            system = hypersurface_system(cfg, d)
            if system.m == 1:
                break
            report.degenerate_resamples += 1
        else:
            raise PreconditionError(f"trial {t}: no unique hypersurface after {max_retries} samples")
        F = system.forms[0]
        good = True
        for _ in range(n - b + 1):
            while True:
                a, c = random_point(r, field, rng), random_point(r, field, rng)
                if a != c:
                    break
            if line_restriction_degree(F, a, c) != d:
                good = False
        if good:
            report.passes += 1
        else:
            report.failures += 1
            report.failed_trials.append(t)
    return report
