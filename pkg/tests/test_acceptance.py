"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines are repeated in
the terminal summary.  ``python tests/test_acceptance.py`` runs the same
checks without pytest.
"""

from __future__ import annotations

import itertools
import time

import pytest

from veronese_lab import (
    Criterion,
    ExactMatrix,
    FieldSpec,
    FloatCloud,
    PointConfig,
    ProjPoint,
    RATIONALS,
    Reason,
    Verdict,
    classify,
    classify_plane,
    classify_quadric_p3,
    determinant,
    fit_hypersurface,
    incidence_jacobian,
    is_d_normal,
    max_secant,
    membership,
    membership_p1_oracle,
    minimal_degree,
    minors_vanish,
    multi_veronese,
    multidegree_check,
    num_monomials,
    rank,
    regularity_of_points,
    span_dimension,
    transform_config,
)
from veronese_lab.constructions import (
    cone_config,
    line_pair_config,
    nodal_cubic_config,
    plane_pair_config,
    quadric_coefficients,
    random_hypersurface_config,
    random_real_quadric,
    real_quadric_cloud,
)
from veronese_lab.sampling import make_rng, random_config, random_invertible, random_rational

pytestmark = pytest.mark.acceptance

F_P = FieldSpec(1000003)
RESULTS: list[str] = []


def report(name: str, ok: bool, detail: str, started: float) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail} ({time.perf_counter() - started:.1f}s)"
    RESULTS.append(line)
    print(line)


# -- rank against brute-force minors -------------------------------------------


def _random_small_matrix(rng) -> list[list[int]]:
    rows, cols = int(rng.integers(1, 7)), int(rng.integers(1, 9))
    a = [[int(x) for x in rng.integers(-5, 6, size=cols)] for _ in range(rows)]
    if rows >= 2 and rng.random() < 0.5:  # force a rank defect
        for i in range(1, rows):
            kind = rng.integers(4)
            j = int(rng.integers(i))
            if kind == 0:
                a[i] = list(a[j])
            elif kind == 1:
                a[i] = [-x for x in a[j]]
            elif kind == 2:
                a[i] = [0] * cols
    return a


def test_rank_matches_minor_enumeration():
    started = time.perf_counter()
    rng = make_rng(101)
    mismatches = checks = deficient = 0
    for _ in range(500):
        rows = _random_small_matrix(rng)
        for field in (RATIONALS, F_P):
            m = ExactMatrix.from_rows(rows, field)
            rk = rank(m)
            deficient += rk < min(m.rows, m.cols)
            for t in range(1, min(m.rows, m.cols) + 1):
                checks += 1
                mismatches += minors_vanish(m, t) != (rk <= t - 1)
    ok = mismatches == 0
    report("rank vs minors", ok, f"{mismatches} mismatches in {checks} checks, "
           f"{deficient} rank-deficient matrix/field pairs", started)
    assert ok


# -- projective line: rank test against the support count ---------------------


def test_projective_line_exhaustive():
    started = time.perf_counter()
    f7 = FieldSpec(7)
    points = [ProjPoint((0, 1), f7)] + [ProjPoint((1, a), f7) for a in range(7)]
    mismatches = total = 0
    for n in range(1, 6):
        for combo in itertools.product(points, repeat=n):
            cfg = PointConfig(combo, f7)
            for d in (1, 2, 3):
                total += 1
                mismatches += membership(cfg, d, 1).member != membership_p1_oracle(cfg, d)
    ok = mismatches == 0
    report("P^1 over F_7 exhaustive", ok, f"{mismatches} mismatches in {total} configurations", started)
    assert ok


# -- six points on a conic ------------------------------------------------------


def test_six_points_on_conic_determinant():
    started = time.perf_counter()
    nonzero_on = nonzero_after = 0
    trials = 1000
    for k in range(trials):
        rng = make_rng(303, k)
        _, cfg = random_hypersurface_config(2, 2, 6, rng)
        nonzero_on += determinant(multi_veronese(cfg, 2)) != 0
        pts = list(cfg)
        i = int(rng.integers(6))
        coords = list(pts[i].coords)
        j = int(rng.integers(3))
        while True:
            delta = random_rational(rng)
            if delta != 0:
                break
        coords[j] += delta
        if all(c == 0 for c in coords):
            coords[j] += 1
        pts[i] = ProjPoint(tuple(coords), RATIONALS)
        nonzero_after += determinant(multi_veronese(PointConfig(tuple(pts), RATIONALS), 2)) != 0
    rate = nonzero_after / trials
    ok = nonzero_on == 0 and rate >= 0.99
    report("six points on a conic", ok, f"det != 0 on conic in {nonzero_on}/{trials}; "
           f"after perturbation det != 0 in {rate:.1%}", started)
    assert ok


# -- incidence Jacobian and smoothness at random configurations ---------------


def test_jacobian_rank_and_smoothness():
    started = time.perf_counter()
    combos = [(r, d, num_monomials(r, d) + extra) for r, d in [(2, 2), (2, 3), (3, 2)] for extra in (0, 2)]
    failures = []
    for k in range(100):
        r, d, n = combos[k % len(combos)]
        rng = make_rng(404, k)
        F, cfg = random_hypersurface_config(r, d, n, rng)
        assert len(set(cfg)) == n
        jr = rank(incidence_jacobian(F, cfg))
        verdict = classify(cfg, d).verdict
        if jr != n or verdict != Verdict.SMOOTH:
            failures.append((k, r, d, n, jr, verdict.value))
    ok = not failures
    report("Jacobian rank n and Smooth", ok, f"{100 - len(failures)}/100 pass; failures {failures[:3]}", started)
    assert ok


# -- constructed boundary families ----------------------------------------------


def test_constructed_boundary_families():
    started = time.perf_counter()
    problems = []
    for seed in range(5):
        rng = make_rng(505, seed)
        once = classify(nodal_cubic_config(9, 1, rng), 3)
        if once.kernel_dim != 1 or once.verdict != Verdict.SMOOTH:
            problems.append(("node once", seed, once.kernel_dim, once.verdict.value))
        twice = classify(nodal_cubic_config(8, 2, rng), 3)
        if twice.kernel_dim != 1 or (twice.verdict, twice.reason) != (Verdict.SINGULAR, Reason.COINCIDENT_SINGULAR_POINTS):
            problems.append(("node twice", seed, twice.kernel_dim, twice.verdict.value))
        for k in (1, 2, 3, 4):
            rep = classify(plane_pair_config([1] * k, (6, 4), rng), 2)
            if rep.kernel_dim != 1:
                problems.append(("plane pair not unique", seed, k, rep.kernel_dim))
            elif k <= 3 and rep.verdict != Verdict.SMOOTH:
                problems.append(("plane pair", seed, k, rep.verdict.value))
            elif k == 4 and ((rep.verdict, rep.reason) != (Verdict.SINGULAR, Reason.NOT_D_NORMAL)
                             or Criterion.SECANT_LINE not in rep.sufficient_conditions_fired):
                problems.append(("plane pair", seed, k, rep.verdict.value))
    ok = not problems
    report("nodal cubic and plane pair families", ok, f"{len(problems)} problems {problems[:3]}", started)
    assert ok


# -- special classifiers against the general one ------------------------------


def _plane_case(k: int, rng):
    kind = k % 9
    if kind == 0:
        return random_hypersurface_config(2, 2, 6 + int(rng.integers(3)), rng)[1], 2
    if kind == 1:
        return random_hypersurface_config(2, 3, 10 + int(rng.integers(3)), rng)[1], 3
    if kind == 2:
        return nodal_cubic_config(9, 1, rng), 3
    if kind == 3:
        return nodal_cubic_config(8, 2, rng), 3
    if kind == 4:
        return line_pair_config((3, 3), int(rng.integers(0, 3)), rng), 2
    if kind == 5:
        return random_config(2, 10, RATIONALS, rng), 3
    if kind == 6:  # pencil of cubics: 8 distinct points, two repeated
        pts = list(random_config(2, 8, RATIONALS, rng))
        return PointConfig(tuple(pts + pts[:2]), RATIONALS), 3
    if kind == 7:  # pencil of conics
        pts = list(random_config(2, 4, RATIONALS, rng))
        return PointConfig(tuple(pts + pts[:2]), RATIONALS), 2
    return random_config(2, 5, RATIONALS, rng), 3


def _quadric_case(k: int, rng):
    kind = k % 8
    if kind == 0:
        return random_hypersurface_config(3, 2, 10 + int(rng.integers(3)), rng)[1]
    if kind == 1:
        return cone_config(10, int(rng.integers(0, 3)), rng)
    if kind == 2:
        return plane_pair_config([1] * int(rng.integers(0, 6)), (6, 4), rng)
    if kind == 3:  # repeated points on the singular line
        mult = [1 + int(rng.integers(0, 2)) for _ in range(int(rng.integers(1, 4)))]
        return plane_pair_config(mult, (6, 4), rng)
    if kind == 4:
        return random_config(3, 10, RATIONALS, rng)
    if kind == 5:  # two quadrics: 8 distinct points, two repeated
        pts = list(random_config(3, 8, RATIONALS, rng))
        return PointConfig(tuple(pts + pts[:2]), RATIONALS)
    if kind == 6:
        return cone_config(11, 2, rng)
    return plane_pair_config([1, 1, 1], (7, 4), rng)


def test_special_classifiers_agree():
    started = time.perf_counter()
    disagreements = []
    kernel_dims, ranks, dup_regimes = set(), set(), set()
    for k in range(300):
        rng = make_rng(606, k)
        if k % 2 == 0:
            cfg, d = _plane_case(k // 2, rng)
            special = classify_plane(cfg, d)
        else:
            cfg = _quadric_case(k // 2, rng)
            d = 2
            special = classify_quadric_p3(cfg)
            if special.quadric_rank is not None:
                ranks.add(special.quadric_rank)
        if rng.random() < 0.5:  # move the configuration by a random projectivity
            cfg = transform_config(cfg, random_invertible(cfg.r + 1, RATIONALS, rng, bound=3))
            special = classify_plane(cfg, d) if cfg.r == 2 else classify_quadric_p3(cfg)
        general = classify(cfg, d)
        kernel_dims.add(general.kernel_dim)
        if general.q is not None:
            dup_regimes.add(general.q.has_duplicates)
        if (special.verdict, special.reason) != (general.verdict, general.reason):
            disagreements.append((k, special.verdict.value, general.verdict.value))
    coverage = {0, 1, 2} <= kernel_dims and {2, 3, 4} <= ranks and dup_regimes == {True, False}
    ok = not disagreements and coverage
    report("special vs general classifier", ok,
           f"{len(disagreements)} disagreements in 300; kernel dims {sorted(kernel_dims)}, "
           f"quadric ranks {sorted(ranks)}, duplicate regimes {sorted(dup_regimes)}", started)
    assert ok


# -- normality and regularity of point sets -----------------------------------


def _structured_point_set(rng):
    r = int(rng.integers(2, 4))
    field = RATIONALS if rng.random() < 0.5 else F_P
    bound = 2 if rng.random() < 0.5 else 9  # small coordinates give collinear triples
    n = int(rng.integers(2, 13))
    pts = list(dict.fromkeys(random_config(r, n, field, rng, bound=bound)))
    if rng.random() < 0.3:  # plant a collinear block
        a, b = random_config(r, 2, field, rng)
        for s in range(int(rng.integers(3, 6))):
            pts.append(ProjPoint(tuple(field.add(x, field.mul(field.element(s), y))
                                       for x, y in zip(a.coords, b.coords)), field))
        pts = list(dict.fromkeys(pts))[:12]
    return pts


def test_normality_and_regularity_properties():
    started = time.perf_counter()
    violations = []
    sets = 0
    for k in range(200):
        rng = make_rng(707, k)
        pts = _structured_point_set(rng)
        if len(pts) < 2:
            continue
        sets += 1
        reg = regularity_of_points(pts)
        if reg < max_secant(pts)[0]:
            violations.append(("secant bound", k))
        if reg > len(pts) - span_dimension(pts) + 1:
            violations.append(("span bound", k))
        for d in range(reg + 2):
            normal = is_d_normal(pts, d)
            if normal and not is_d_normal(pts, d + 1):
                violations.append(("monotone", k, d))
            if normal:
                subsets = [pts[:i] + pts[i + 1:] for i in range(len(pts))]
                subsets.append([p for p in pts if rng.random() < 0.5])
                if not all(is_d_normal(s, d) for s in subsets):
                    violations.append(("hereditary", k, d))
    collinear_ok = True
    for m in range(2, 7):
        a, b = (1, 2, 0, 1), (0, 1, 3, -1)
        line = [ProjPoint(tuple(x + s * y for x, y in zip(a, b)), RATIONALS) for s in range(m)]
        collinear_ok &= regularity_of_points(line) == m
    ok = not violations and collinear_ok and sets >= 190
    report("normality and regularity", ok, f"{len(violations)} violations on {sets} sets; "
           f"collinear regularity {'exact' if collinear_ok else 'WRONG'}", started)
    assert ok


# -- multidegree ----------------------------------------------------------------


def test_multidegree():
    started = time.perf_counter()
    details, ok = [], True
    for (r, d, n), seed in zip([(2, 2, 6), (2, 3, 10), (3, 2, 10)], (808, 809, 810)):
        rep = multidegree_check(r, d, n, 100, seed, F_P)
        ok &= rep.ok
        details.append(f"({r},{d},{n}) {rep.passes}/100 value {rep.expected_value}")
    report("multidegree", ok, "; ".join(details), started)
    assert ok


# -- numeric fit ------------------------------------------------------------------


def test_fit_recovery():
    started = time.perf_counter()
    noiseless_bad, noisy_ok, noisy_total = [], 0, 0
    concordant = pairs = 0
    for r in (2, 3):
        n = 3 * num_monomials(r, 2)
        for k in range(50):
            rng = make_rng(909, r, k)
            A = random_real_quadric(r, rng)
            true = quadric_coefficients(A)
            pts = real_quadric_cloud(A, n, rng)
            search = minimal_degree(FloatCloud(pts), 3)
            if search.degree != 2 or search.fit.angle_to(true) > 1e-6:
                noiseless_bad.append((r, k, search.degree))
            z = rng.standard_normal(pts.shape)
            noisy = fit_hypersurface(FloatCloud(pts + 1e-4 * z), 2)
            noisy_total += 1
            noisy_ok += noisy.angle_to(true) <= 1e-2
            residuals = [fit_hypersurface(FloatCloud(pts + s * z), 2).residual for s in (1e-6, 1e-4, 1e-2)]
            for i in range(2):
                pairs += 1
                concordant += residuals[i] <= residuals[i + 1]
    noisy_rate, concordance = noisy_ok / noisy_total, concordant / pairs
    ok = not noiseless_bad and noisy_rate >= 0.95 and concordance >= 0.90
    report("fit recovery", ok, f"noiseless failures {len(noiseless_bad)}/100; noisy angle <= 1e-2 in "
           f"{noisy_rate:.0%}; residual-vs-noise concordance {concordance:.0%}", started)
    assert ok


# -- invariance ---------------------------------------------------------------------


def _invariance_case(k: int, rng):
    field = RATIONALS if k % 2 == 0 else F_P
    kind = (k // 2) % 5
    if kind == 0:
        return random_hypersurface_config(2, 2, 7, rng, field=field)[1], 2
    if kind == 1:
        return random_hypersurface_config(3, 2, 10, rng, field=field)[1], 2
    if kind == 2:
        return nodal_cubic_config(8 + int(rng.integers(2)), 1 + int(rng.integers(2)), rng, field=field), 3
    if kind == 3:
        return plane_pair_config([1] * int(rng.integers(1, 6)), (6, 4), rng, field=field), 2
    return random_config(2, 6, field, rng), 2


def _signature(cfg: PointConfig, d: int):
    rep = classify(cfg, d)
    mem = membership(cfg, d, 1)
    distinct = list(dict.fromkeys(cfg))
    q = rep.q
    return (
        rep.verdict, rep.reason, rep.kernel_dim, rep.regularity_of_q, rep.max_secant_of_q,
        rep.t_generality_of_q, tuple(rep.sufficient_conditions_fired),
        None if q is None else (len(q.indices), len(q.distinct_points), q.has_duplicates),
        mem, regularity_of_points(distinct),
    )


def test_invariance():
    started = time.perf_counter()
    changed = []
    for k in range(100):
        rng = make_rng(1010, k)
        cfg, d = _invariance_case(k, rng)
        base = _signature(cfg, d)
        perm = [int(i) for i in rng.permutation(cfg.n)]
        moved = transform_config(cfg, random_invertible(cfg.r + 1, cfg.field, rng, bound=3))
        if _signature(cfg.permuted(perm), d) != base:
            changed.append(("permutation", k))
        if _signature(moved, d) != base:
            changed.append(("projectivity", k))
    ok = not changed
    report("invariance", ok, f"{len(changed)} changed outputs in 100 inputs x 2 moves {changed[:3]}", started)
    assert ok


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                pass
