"""Fitting hypersurfaces to real point clouds.

The fit is total least squares on the multi-Veronese matrix: every column
``v(p_i)`` is scaled to unit length (so the answer does not depend on which
homogeneous representative of ``p_i`` was supplied), and the coefficient
vector is the left singular vector of the smallest singular value.  That
singular value is the *residual*.  It is a proxy for how far the cloud is
from lying on a degree-d hypersurface, not a geometric distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, PreconditionError
from .veronese import DEFAULT_BASIS_CAP, MonomialBasis, monomial_basis

__all__ = [
    "FloatCloud",
    "FitResult",
    "DegreeSearch",
    "float_veronese",
    "fit_hypersurface",
    "minimal_degree",
    "default_eps",
    "jacobi_svd",
]


@dataclass(frozen=True)
class FloatCloud:
    """``n`` points of real projective space, one homogeneous row per point."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] < 2:
            raise InvalidInputError(f"points: expected an n x (r+1) array, got shape {pts.shape}")
        if pts.shape[0] < 1:
            raise InvalidInputError("points: cloud is empty")
        if not np.all(np.isfinite(pts)):
            raise InvalidInputError("points: non-finite coordinate")
        if np.any(np.all(pts == 0, axis=1)):
            raise InvalidInputError("points: all-zero row")
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_affine(cls, points) -> "FloatCloud":
        """Homogenize affine rows by appending a trailing coordinate 1."""
        pts = np.asarray(points, dtype=np.float64)
        if pts.ndim != 2:
            raise InvalidInputError(f"points: expected a 2d array, got shape {pts.shape}")
        return cls(np.hstack([pts, np.ones((pts.shape[0], 1))]))

    @property
    def r(self) -> int:
        return self.points.shape[1] - 1

    @property
    def n(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True)
class FitResult:
    d: int
    coeffs: np.ndarray
    residual: float
    per_point: np.ndarray
    condition: float
    singular_values: np.ndarray
    underdetermined: bool

    def angle_to(self, other) -> float:
        """Angle in radians between ``coeffs`` and ``other``, ignoring sign."""
        u = self.coeffs / np.linalg.norm(self.coeffs)
        v = np.asarray(other, dtype=np.float64)
        v = v / np.linalg.norm(v)
        c = float(u @ v)
        return float(np.arctan2(np.linalg.norm(v - c * u), abs(c)))


def float_veronese(points: np.ndarray, basis: MonomialBasis) -> np.ndarray:
    """``b x n`` matrix of degree-d monomials evaluated at the rows of ``points``."""
    exps = np.array(basis.exponents, dtype=np.int64)  # b x (r+1)
    pw = points[:, None, :] ** exps[None, :, :]  # n x b x (r+1)
    return np.prod(pw, axis=2).T


def default_eps(n: int) -> float:
    return 1e-8 * math.sqrt(n)


def _canonical_sign(c: np.ndarray) -> np.ndarray:
    big = np.flatnonzero(np.abs(c) > 1e-10)
    if big.size and c[big[0]] < 0:
        return -c
    return c


def fit_hypersurface(cloud: FloatCloud, d: int, cap: int = DEFAULT_BASIS_CAP) -> FitResult:
    """Best-fitting degree-d form in the column-normalized total least squares sense."""
    if d < 1:
        raise PreconditionError(f"degree must be >= 1, got {d}")
    basis = monomial_basis(cloud.r, d, cap)
    # unit-norm representatives first, to keep powers in range
    pts = cloud.points / np.linalg.norm(cloud.points, axis=1, keepdims=True)
    M = float_veronese(pts, basis)
    norms = np.linalg.norm(M, axis=0)
    if np.any(norms == 0):
        raise InvalidInputError("points: degenerate all-zero Veronese column")
    M = M / norms
    b, n = M.shape
    U, s, _ = np.linalg.svd(M, full_matrices=True)
    full = np.zeros(b)
    full[: s.size] = s
    coeffs = _canonical_sign(U[:, b - 1])
    residual = float(full[b - 1])
    per_point = np.abs(M.T @ coeffs)
    condition = float(full[0] / residual) if residual > 0 else math.inf
    return FitResult(d, coeffs, residual, per_point, condition, full, underdetermined=n < b)


@dataclass(frozen=True)
class DegreeSearch:
    degree: int | None
    fit: FitResult | None
    residuals: dict
    eps: float
    trivial: bool = False

    @property
    def found(self) -> bool:
        return self.degree is not None


def minimal_degree(cloud: FloatCloud, d_max: int, eps: float | None = None) -> DegreeSearch:
    """Smallest ``d <= d_max`` whose fit residual is at most ``eps``.

    ``eps`` defaults to ``1e-8 * sqrt(n)``.  A degree with fewer points than
    monomials always fits; such a hit is returned with ``trivial=True``.
    """
    if d_max < 1:
        raise PreconditionError(f"d_max must be >= 1, got {d_max}")
    if eps is None:
        eps = default_eps(cloud.n)
    if not eps > 0:
        raise PreconditionError(f"eps must be positive, got {eps}")
    residuals = {}
    for d in range(1, d_max + 1):
        res = fit_hypersurface(cloud, d)
        residuals[d] = res.residual
        if res.residual <= eps:
            return DegreeSearch(d, res, residuals, eps, trivial=res.underdetermined)
    return DegreeSearch(None, None, residuals, eps)


def jacobi_svd(a, tol: float = 1e-15, max_sweeps: int = 100):
    """One-sided (Hestenes) Jacobi SVD, ``a = u @ diag(s) @ vt``.

    Slow but simple and unconditionally convergent; kept as the reference the
    LAPACK-backed fit is checked against.
    """
    a = np.array(a, dtype=np.float64)
    transpose = a.shape[0] < a.shape[1]
    if transpose:
        a = a.T
    m, n = a.shape
    w = a.copy()
    v = np.eye(n)
    for _ in range(max_sweeps):
        rotated = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                alpha = w[:, i] @ w[:, i]
                beta = w[:, j] @ w[:, j]
                gamma = w[:, i] @ w[:, j]
                if abs(gamma) <= tol * math.sqrt(alpha * beta) or gamma == 0:
                    continue
                rotated = True
                zeta = (beta - alpha) / (2 * gamma)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.sqrt(1 + zeta * zeta))
                c = 1 / math.sqrt(1 + t * t)
                s = c * t
                wi, wj = w[:, i].copy(), w[:, j].copy()
                w[:, i], w[:, j] = c * wi - s * wj, s * wi + c * wj
                vi, vj = v[:, i].copy(), v[:, j].copy()
                v[:, i], v[:, j] = c * vi - s * vj, s * vi + c * vj
        if not rotated:
            break
    sv = np.linalg.norm(w, axis=0)
    order = np.argsort(-sv)
    sv, w, v = sv[order], w[:, order], v[:, order]
    u = np.divide(w, sv, out=np.zeros_like(w), where=sv > 0)
    if transpose:
        return v, sv, u.T
    return u, sv, v.T
