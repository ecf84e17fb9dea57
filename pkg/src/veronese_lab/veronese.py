"""Monomial bases, Veronese evaluation and derivatives of forms.

Monomials of degree ``d`` in ``x0, ..., xr`` are ordered graded-lexicographically
with ``x0 > x1 > ... > xr``; for a fixed degree this is plain descending
lexicographic order on exponent tuples, so ``x0**d`` comes first and ``xr**d``
last.  The order is part of the file format, do not change it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import CapExceededError, InvalidInputError, PreconditionError
from .exactcore import RATIONALS, ExactMatrix, FieldSpec

__all__ = [
    "DEFAULT_BASIS_CAP",
    "num_monomials",
    "MonomialBasis",
    "monomial_basis",
    "ProjPoint",
    "PointConfig",
    "HypersurfaceForm",
    "monomial_values",
    "veronese_eval",
    "multi_veronese",
    "gradient_eval",
    "transform_config",
]

DEFAULT_BASIS_CAP = 10**5


def num_monomials(r: int, d: int) -> int:
    """``b(r, d) = C(r + d, d)``, the number of degree-d monomials in r+1 variables."""
    return math.comb(r + d, d)


def _exponents(nvars: int, d: int) -> Iterator[tuple[int, ...]]:
    if nvars == 1:
        yield (d,)
        return
    for e in range(d, -1, -1):
        for rest in _exponents(nvars - 1, d - e):
            yield (e,) + rest


@dataclass(frozen=True)
class MonomialBasis:
    r: int
    d: int
    exponents: tuple[tuple[int, ...], ...]
    _index: dict = dc_field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(self.exponents)})

    def __len__(self):
        return len(self.exponents)

    def __iter__(self):
        return iter(self.exponents)

    def index(self, exponent: Sequence[int]) -> int:
        try:
            return self._index[tuple(exponent)]
        except KeyError:
            raise InvalidInputError(f"{tuple(exponent)} is not a degree-{self.d} monomial in {self.r + 1} variables") from None

    def monomial_str(self, i: int) -> str:
        parts = []
        for j, e in enumerate(self.exponents[i]):
            if e == 1:
                parts.append(f"x{j}")
            elif e > 1:
                parts.append(f"x{j}^{e}")
        return "*".join(parts) or "1"


@lru_cache(maxsize=256)
def _cached_basis(r: int, d: int) -> MonomialBasis:
    return MonomialBasis(r, d, tuple(_exponents(r + 1, d)))


def monomial_basis(r: int, d: int, cap: int = DEFAULT_BASIS_CAP) -> MonomialBasis:
    """All degree-``d`` monomials in ``x0..xr`` in graded-lex order.

    >>> [m for m in monomial_basis(1, 2)]
    [(2, 0), (1, 1), (0, 2)]
    """
    if r < 1 or d < 1:
        raise PreconditionError(f"monomial_basis needs r >= 1 and d >= 1, got r={r}, d={d}")
    b = num_monomials(r, d)
    if b > cap:
        raise CapExceededError(f"degree: b({r},{d}) = {b} monomials exceeds cap {cap}")
    return _cached_basis(r, d)


@dataclass(frozen=True)
class ProjPoint:
    """A point of P^r, stored by its canonical representative (first nonzero coordinate 1)."""

    coords: tuple
    field: FieldSpec = RATIONALS

    def __post_init__(self):
        f = self.field
        coords = tuple(f.element(x) for x in self.coords)
        if len(coords) < 2:
            raise InvalidInputError("point: need at least 2 homogeneous coordinates")
        if all(x == 0 for x in coords):
            raise InvalidInputError("point: all coordinates are zero")
        object.__setattr__(self, "coords", f.normalize(coords))

    @property
    def ambient_dim(self) -> int:
        return len(self.coords) - 1

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __repr__(self):
        return "[" + ":".join(str(x) for x in self.coords) + "]"


@dataclass(frozen=True)
class PointConfig:
    """An ordered n-tuple of points in P^r over one field."""

    points: tuple[ProjPoint, ...]
    field: FieldSpec = RATIONALS

    def __post_init__(self):
        pts = tuple(self.points)
        if not pts:
            raise InvalidInputError("points: configuration must contain at least one point")
        r = pts[0].ambient_dim
        for i, p in enumerate(pts):
            if p.ambient_dim != r:
                raise InvalidInputError(f"points[{i}]: expected {r + 1} coordinates, got {len(p)}")
            if p.field != self.field:
                raise InvalidInputError(f"points[{i}]: field {p.field} differs from {self.field}")
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], field: FieldSpec = RATIONALS) -> "PointConfig":
        return cls(tuple(ProjPoint(tuple(row), field) for row in rows), field)

    @property
    def r(self) -> int:
        return self.points[0].ambient_dim

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def permuted(self, perm: Sequence[int]) -> "PointConfig":
        return PointConfig(tuple(self.points[i] for i in perm), self.field)


@dataclass(frozen=True)
class HypersurfaceForm:
    """A nonzero degree-d form ``sum a_I x^I``, scaled so the first nonzero coefficient is 1."""

    basis: MonomialBasis
    coeffs: tuple
    field: FieldSpec = RATIONALS

    def __post_init__(self):
        f = self.field
        coeffs = tuple(f.element(c) for c in self.coeffs)
        if len(coeffs) != len(self.basis):
            raise InvalidInputError(f"form: {len(coeffs)} coefficients for {len(self.basis)} monomials")
        if all(c == 0 for c in coeffs):
            raise InvalidInputError("form: all coefficients are zero")
        object.__setattr__(self, "coeffs", f.normalize(coeffs))

    @classmethod
    def from_terms(cls, r: int, d: int, terms: Mapping[Sequence[int], object],
                   field: FieldSpec = RATIONALS) -> "HypersurfaceForm":
        """Build a form from ``{exponent_tuple: coefficient}``."""
        basis = monomial_basis(r, d)
        coeffs = [field.zero()] * len(basis)
        for exp, c in terms.items():
            i = basis.index(exp)
            coeffs[i] = field.add(coeffs[i], field.element(c))
        return cls(basis, tuple(coeffs), field)

    @property
    def r(self) -> int:
        return self.basis.r

    @property
    def d(self) -> int:
        return self.basis.d

    def __call__(self, point) -> object:
        coords = point.coords if isinstance(point, ProjPoint) else point
        return self.field.dot(self.coeffs, monomial_values(coords, self.basis, self.field))

    def terms(self) -> list[tuple[tuple[int, ...], object]]:
        return [(e, c) for e, c in zip(self.basis.exponents, self.coeffs) if c != 0]

    def __str__(self):
        out = []
        for i, c in enumerate(self.coeffs):
            if c != 0:
                out.append(f"({c})*{self.basis.monomial_str(i)}")
        return " + ".join(out)


def _power_table(coords: Sequence, d: int, field: FieldSpec) -> list[list]:
    table = []
    for x in coords:
        row = [field.one()]
        for _ in range(d):
            row.append(field.mul(row[-1], x))
        table.append(row)
    return table


def monomial_values(coords: Sequence, basis: MonomialBasis, field: FieldSpec = RATIONALS) -> tuple:
    """Evaluate every monomial of ``basis`` at a raw (not necessarily canonical) coordinate vector."""
    if len(coords) != basis.r + 1:
        raise InvalidInputError(f"point has {len(coords)} coordinates, basis expects {basis.r + 1}")
    coords = [field.element(x) for x in coords]
    pw = _power_table(coords, basis.d, field)
    out = []
    for exp in basis.exponents:
        v = field.one()
        for j, e in enumerate(exp):
            if e:
                v = field.mul(v, pw[j][e])
        out.append(v)
    return tuple(out)


def veronese_eval(p: ProjPoint, basis: MonomialBasis) -> tuple:
    """Image of ``p`` under the degree-d Veronese map, using its canonical representative."""
    if p.ambient_dim != basis.r:
        raise InvalidInputError(f"point lives in P^{p.ambient_dim}, basis in P^{basis.r}")
    return monomial_values(p.coords, basis, p.field)


def multi_veronese(cfg: PointConfig, d: int, cap: int = DEFAULT_BASIS_CAP) -> ExactMatrix:
    """The ``b(r,d) x n`` matrix whose i-th column is ``veronese_eval(cfg[i])``."""
    basis = monomial_basis(cfg.r, d, cap)
    columns = [veronese_eval(p, basis) for p in cfg]
    rows = [[col[k] for col in columns] for k in range(len(basis))]
    return ExactMatrix._trusted(rows, cfg.n, cfg.field)


def gradient_eval(F: HypersurfaceForm, p: ProjPoint) -> tuple:
    """``(dF/dx0, ..., dF/dxr)`` at the canonical representative of ``p``.

    Formal derivatives, so the result is meaningful in every characteristic.
    """
    if p.ambient_dim != F.r:
        raise InvalidInputError(f"point lives in P^{p.ambient_dim}, form in P^{F.r}")
    f = F.field
    pw = _power_table(p.coords, F.d, f)
    grad = [f.zero()] * (F.r + 1)
    for exp, a in zip(F.basis.exponents, F.coeffs):
        if a == 0:
            continue
        for j, ej in enumerate(exp):
            if ej == 0:
                continue
            term = f.mul(a, f.scalar(ej))
            for k, ek in enumerate(exp):
                e = ek - 1 if k == j else ek
                if e:
                    term = f.mul(term, pw[k][e])
            grad[j] = f.add(grad[j], term)
    return tuple(grad)


def transform_config(cfg: PointConfig, g: ExactMatrix) -> PointConfig:
    """Apply the projective transformation ``x -> g x`` to every point."""
    if g.rows != cfg.r + 1 or g.cols != cfg.r + 1:
        raise InvalidInputError("transformation matrix has wrong size")
    return PointConfig(tuple(ProjPoint(g.apply(p.coords), cfg.field) for p in cfg), cfg.field)
