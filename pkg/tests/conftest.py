from fractions import Fraction
from itertools import permutations

import pytest

from veronese_lab import FieldSpec, RATIONALS
from veronese_lab.sampling import make_rng

F_BIG = FieldSpec(1000003)
F7 = FieldSpec(7)


@pytest.fixture
def rng():
    return make_rng(20261018)


def naive_rank(rows, p=0):
    """Plain Gauss-Jordan with Fractions (or mod p); independent of the Bareiss path."""
    a = [[Fraction(x) if not p else x % p for x in row] for row in rows]
    if not a:
        return 0
    nr, nc = len(a), len(a[0])
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c] if not p else pow(a[r][c], -1, p)
        a[r] = [x * inv if not p else x * inv % p for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                g = a[i][c]
                a[i] = [x - g * y if not p else (x - g * y) % p for x, y in zip(a[i], a[r])]
        r += 1
        if r == nr:
            break
    return r


def leibniz_det(rows, p=0):
    """Determinant by the permutation expansion (only for tiny matrices)."""
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = Fraction(1)
        for i in range(n):
            prod *= rows[i][perm[i]]
        total += sign * prod
    return total % p if p else total


def conic_points(ts, field=RATIONALS):
    """Points [1 : t : t^2] on x0*x2 - x1^2 (plus the point at infinity for t=None)."""
    out = []
    for t in ts:
        out.append((0, 0, 1) if t is None else (1, t, t * t))
    return out


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
