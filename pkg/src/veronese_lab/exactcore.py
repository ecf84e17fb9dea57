"""Exact scalars and exact matrix algebra.

Two kinds of fields are supported: the rationals (elements are
:class:`fractions.Fraction`) and prime fields ``F_p`` with ``p < 2**62``
(elements are Python ints in ``[0, p)``).

Rank, determinant and kernel go through fraction-free (Bareiss) elimination
on integer rows.  Rational rows are first scaled by the lcm of their
denominators, which changes neither rank nor kernel.  There are no
probabilistic or floating point shortcuts anywhere in this module.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import CapExceededError, InvalidInputError, PreconditionError

__all__ = [
    "FieldSpec",
    "RATIONALS",
    "ExactMatrix",
    "is_prime",
    "rank",
    "kernel_basis",
    "minors_vanish",
    "determinant",
    "solve",
    "DEFAULT_MINOR_CAP",
    "DEFAULT_TEST_PRIME",
]

DEFAULT_MINOR_CAP = 10**6
DEFAULT_TEST_PRIME = 1000003
_MAX_PRIME = 2**62

# Deterministic Miller-Rabin witnesses, valid for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test for the word-sized integers used here."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The base field: ``characteristic == 0`` means Q, otherwise ``F_p``."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if not isinstance(p, int) or p < 0:
            raise InvalidInputError(f"field: characteristic must be a nonnegative int, got {p!r}")
        if p != 0:
            if p >= _MAX_PRIME:
                raise InvalidInputError(f"field: modulus {p} exceeds 2^62")
            if not is_prime(p):
                raise InvalidInputError(f"field: modulus {p} is not prime")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(int(p))

    @property
    def kind(self) -> str:
        return "rational" if self.characteristic == 0 else "prime"

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def __str__(self):
        return "rational" if self.characteristic == 0 else f"fp:{self.characteristic}"

    # -- elements ---------------------------------------------------------

    def element(self, x) -> "Fraction | int":
        """Coerce ``x`` (int, Fraction, or a string like ``"3/7"``) into the field."""
        if isinstance(x, str):
            try:
                x = Fraction(x.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise InvalidInputError(f"cannot parse field element {x!r}") from exc
        elif isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            raise InvalidInputError(f"exact field element must be int, Fraction or str, got {type(x).__name__}")
        p = self.characteristic
        if p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise InvalidInputError(f"denominator of {x} vanishes mod {p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return x % p

    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def add(self, a, b):
        return a + b if self.characteristic == 0 else (a + b) % self.characteristic

    def sub(self, a, b):
        return a - b if self.characteristic == 0 else (a - b) % self.characteristic

    def mul(self, a, b):
        return a * b if self.characteristic == 0 else a * b % self.characteristic

    def neg(self, a):
        return -a if self.characteristic == 0 else -a % self.characteristic

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a) if self.characteristic == 0 else pow(a, -1, self.characteristic)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        return a**e if self.characteristic == 0 else pow(a, e, self.characteristic)

    def scalar(self, k: int):
        """Image of the integer ``k`` in the field."""
        return Fraction(k) if self.characteristic == 0 else k % self.characteristic

    def dot(self, u: Sequence, v: Sequence):
        s = sum(a * b for a, b in zip(u, v))
        return Fraction(s) if self.characteristic == 0 else s % self.characteristic

    def format(self, a) -> str:
        """Lossless string form (``"3/7"`` for rationals, residue for ``F_p``)."""
        return str(a)

    def normalize(self, vec: Sequence) -> tuple:
        """Scale ``vec`` so that its first nonzero entry is 1."""
        for x in vec:
            if x != 0:
                inv = self.inv(x)
                return tuple(self.mul(inv, y) for y in vec)
        return tuple(vec)


RATIONALS = FieldSpec(0)


@dataclass(frozen=True)
class ExactMatrix:
    """Dense row-major matrix over a :class:`FieldSpec`."""

    rows: int
    cols: int
    entries: tuple
    field: FieldSpec = RATIONALS

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise InvalidInputError(
                f"matrix: {len(self.entries)} entries for shape {self.rows}x{self.cols}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], field: FieldSpec = RATIONALS, cols: int | None = None):
        rows = [[field.element(x) for x in row] for row in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(row) != cols for row in rows):
            raise InvalidInputError("matrix: rows have inconsistent lengths")
        return cls(len(rows), cols, tuple(x for row in rows for x in row), field)

    @classmethod
    def _trusted(cls, rows: list, cols: int, field: FieldSpec):
        # entries already in the field
        return cls(len(rows), cols, tuple(x for row in rows for x in row), field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec = RATIONALS):
        return cls(rows, cols, (field.zero(),) * (rows * cols), field)

    @classmethod
    def identity(cls, n: int, field: FieldSpec = RATIONALS):
        z, o = field.zero(), field.one()
        return cls(n, n, tuple(o if i == j else z for i in range(n) for j in range(n)), field)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix._trusted([list(self.column(j)) for j in range(self.cols)], self.rows, self.field)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "ExactMatrix":
        rows = [[self[i, j] for j in col_idx] for i in row_idx]
        return ExactMatrix._trusted(rows, len(col_idx), self.field)

    def apply(self, vec: Sequence) -> tuple:
        """Matrix-vector product ``self @ vec``."""
        if len(vec) != self.cols:
            raise InvalidInputError("matrix-vector shape mismatch")
        return tuple(self.field.dot(self.row(i), vec) for i in range(self.rows))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows or self.field != other.field:
            raise InvalidInputError("matrix product shape or field mismatch")
        ocols = [other.column(j) for j in range(other.cols)]
        rows = [[self.field.dot(self.row(i), c) for c in ocols] for i in range(self.rows)]
        return ExactMatrix._trusted(rows, other.cols, self.field)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)


# -- fraction-free elimination ------------------------------------------------


def _integer_rows(m: ExactMatrix) -> tuple[list[list[int]], Fraction]:
    """Integer rows with the same row space; also returns the product of row scalings."""
    rows = m.to_rows()
    if m.field.characteristic != 0:
        return rows, Fraction(1)
    out, scale = [], Fraction(1)
    for row in rows:
        den = math.lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
        scale *= den
    return out, scale


def _bareiss(a: list[list[int]], ncols: int, p: int) -> tuple[list[int], int]:
    """In-place Bareiss elimination; returns (pivot columns, permutation sign).

    Over Z every division is exact (Sylvester's identity), so ``a`` stays
    integral.  Over F_p the same update is carried out mod p.
    """
    nrows = len(a)
    pivots: list[int] = []
    sign = 1
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            sign = -sign
        row_r = a[r]
        pv = row_r[c]
        if p:
            inv_prev = pow(prev, -1, p)
        for i in range(r + 1, nrows):
            row_i = a[i]
            f = row_i[c]
            if p:
                for j in range(c + 1, ncols):
                    row_i[j] = (pv * row_i[j] - f * row_r[j]) * inv_prev % p
            else:
                for j in range(c + 1, ncols):
                    row_i[j] = (pv * row_i[j] - f * row_r[j]) // prev
            row_i[c] = 0
        prev = pv
        pivots.append(c)
        r += 1
    return pivots, sign


def rank(m: ExactMatrix) -> int:
    """Exact rank over ``m.field``."""
    if m.rows == 0 or m.cols == 0:
        return 0
    a, _ = _integer_rows(m)
    # eliminate along the shorter side
    if m.cols < m.rows:
        a = [list(col) for col in zip(*a)]
    pivots, _ = _bareiss(a, len(a[0]), m.field.characteristic)
    return len(pivots)


def determinant(m: ExactMatrix):
    """Exact determinant of a square matrix."""
    if m.rows != m.cols:
        raise PreconditionError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    f = m.field
    if m.rows == 0:
        return f.one()
    a, scale = _integer_rows(m)
    pivots, sign = _bareiss(a, m.cols, f.characteristic)
    if len(pivots) < m.rows:
        return f.zero()
    # after Bareiss the last pivot is the determinant of the (scaled) matrix
    d = sign * a[-1][-1]
    if f.characteristic:
        return d % f.characteristic
    return Fraction(d) / scale


def kernel_basis(m: ExactMatrix) -> list[tuple]:
    """Basis of the right null space ``{v : m v = 0}``.

    One vector per non-pivot column (in increasing column order), each scaled
    so its first nonzero entry is 1.
    """
    f = m.field
    n = m.cols
    if m.rows == 0:
        return [tuple(f.one() if i == j else f.zero() for i in range(n)) for j in range(n)]
    a, _ = _integer_rows(m)
    pivots, _ = _bareiss(a, n, f.characteristic)
    pivot_set = set(pivots)
    p = f.characteristic
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        x = [f.zero()] * n
        x[free] = f.one()
        for k in range(len(pivots) - 1, -1, -1):
            c = pivots[k]
            row = a[k]
            s = sum(row[j] * x[j] for j in range(c + 1, n))
            if p:
                x[c] = -s * pow(row[c], -1, p) % p
            else:
                x[c] = Fraction(-s) / row[c]
        basis.append(f.normalize(x))
    return basis


def _laplace_minors(a: list[list[int]], p: int) -> dict[int, int]:
    """All maximal minors of the ``t x c`` matrix ``a``, keyed by column bitmask.

    Laplace expansion along the rows, memoized over column subsets.  Shares
    no code with the elimination routines, which is the point: the minor
    enumeration is used to cross-check :func:`rank`.
    """
    t = len(a)
    cols = len(a[0])
    # f[mask] = minor on rows 0..popcount(mask)-1 and the columns in mask
    f = {0: 1}
    for k in range(t):
        g = {}
        for mask, val in f.items():
            if val == 0:
                continue
            above = 0  # columns of mask to the right of j, counted as we scan down
            for j in range(cols - 1, -1, -1):
                if mask >> j & 1:
                    above += 1
                    continue
                # row k sits in position k; column j is inserted after (k - above) smaller columns
                sign = -1 if (k - above + k) % 2 else 1
                new = mask | (1 << j)
                g[new] = g.get(new, 0) + sign * a[k][j] * val
        f = g if not p else {m: v % p for m, v in g.items()}
    return f


def _laplace_det(a: list[list[int]], p: int) -> int:
    return sum(_laplace_minors(a, p).values())


def minors_vanish(m: ExactMatrix, t: int, cap: int = DEFAULT_MINOR_CAP) -> bool:
    """True iff every ``t x t`` minor of ``m`` is zero, by explicit enumeration.

    This is deliberately brute force; it exists as an independent check on
    :func:`rank` (``minors_vanish(m, t) == (rank(m) <= t - 1)``).
    """
    if not 1 <= t <= min(m.rows, m.cols):
        raise PreconditionError(f"minor size t={t} outside [1, {min(m.rows, m.cols)}]")
    count = math.comb(m.rows, t) * math.comb(m.cols, t)
    if count > cap:
        raise CapExceededError(f"cap-minors: {count} minors of size {t} exceed cap {cap}")
    a, _ = _integer_rows(m)
    p = m.field.characteristic
    for rows in itertools.combinations(range(m.rows), t):
        if any(v != 0 for v in _laplace_minors([a[i] for i in rows], p).values()):
            return False
    return True


def solve(m: ExactMatrix, rhs: Sequence) -> tuple:
    """Solve ``m x = rhs`` for square invertible ``m`` (Gauss-Jordan in the field)."""
    if m.rows != m.cols:
        raise PreconditionError("solve needs a square matrix")
    f = m.field
    n = m.rows
    if len(rhs) != n:
        raise InvalidInputError("solve: right-hand side has wrong length")
    aug = [list(m.row(i)) + [f.element(rhs[i])] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise PreconditionError("solve: matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = f.inv(aug[c][c])
        aug[c] = [f.mul(inv, x) for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                g = aug[i][c]
                aug[i] = [f.sub(x, f.mul(g, y)) for x, y in zip(aug[i], aug[c])]
    return tuple(row[n] for row in aug)
