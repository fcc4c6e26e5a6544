"""Exit criteria, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed in the pytest
terminal summary (see conftest.py) and by ``python tests/test_acceptance.py``.
"""
import math
import time
from fractions import Fraction

import pytest

from eacount.burnside import count_classes_conjugacy, count_classes_exhaustive
from eacount.collision import (ccz_equivalent, collision_prob_exact, collision_upper_ea,
                               mc_collision, mc_trivial_stab, nontrivial_stab_bound,
                               nontrivial_stab_census, orbit_partition)
from eacount.ea import (apply, compose, ea_equivalent, gamma_order, orbit_of, random_element,
                        stabilizer)
from eacount.functions import all_tables, make_rng, random_table
from eacount.gf import agl_order
from eacount.selftest import (ORACLE_SIZES, affine_lemma_suite, fix_bound_suite,
                              fix_oracle_suite)

RESULTS = {}


def record(number, ok, detail):
    RESULTS[number] = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    print(RESULTS[number])
    return ok


def test_criterion_1_fix_count_oracle():
    t = time.perf_counter()
    suite = fix_oracle_suite(ORACLE_SIZES)
    elapsed = time.perf_counter() - t
    ok = suite.ok and suite.checked == 4 + 48 + 48 + 576 + 36 and elapsed < 120
    assert record(1, ok, f"{suite.checked} elements, {len(suite.failures)} mismatches, "
                         f"{elapsed:.1f}s (< 120s)")


def test_criterion_2_class_count_triple_agreement():
    rows, ok = [], True
    for dims in ORACLE_SIZES:
        ex, cj = count_classes_exhaustive(*dims), count_classes_conjugacy(*dims)
        census = orbit_partition(*dims).count
        divisible = ex.burnside_sum % ex.gamma_order == 0 and cj.burnside_sum % cj.gamma_order == 0
        ok &= ex.class_count == cj.class_count == census and divisible
        rows.append(f"{dims}={ex.class_count}/{cj.class_count}/{census}")
    smallest = count_classes_exhaustive(2, 1, 1).class_count
    p = collision_prob_exact(2, 1, 1)
    ok &= smallest == 2 and p == Fraction(1, 2)
    assert record(2, ok, "exhaustive/conjugacy/partition " + ", ".join(rows)
                  + f"; (2,1,1) count {smallest}, collision {p}")


def test_criterion_3_lemma_suites():
    affine = affine_lemma_suite(((1, 2), (2, 2), (3, 2), (1, 3), (2, 3)))
    bound = fix_bound_suite(ORACLE_SIZES)
    ok = affine.ok and bound.ok
    assert record(3, ok, f"affine lemmas {affine.checked} checks/{len(affine.failures)} violations; "
                         f"fix bound {bound.checked} checks/{len(bound.failures)} violations")


def test_criterion_4_orbit_stabilizer_and_group_law():
    t = time.perf_counter()
    rng = make_rng(4)
    orbit_bad = 0
    for _ in range(50):
        F = random_table(rng, 2, 2, 2)
        orbit_bad += len(orbit_of(F)) * stabilizer(F).size != 576
    tables = list(all_tables(2, 2, 2))
    law_bad = 0
    for _ in range(20):
        g, h = random_element(rng, 2, 2, 2), random_element(rng, 2, 2, 2)
        gh = compose(g, h)
        law_bad += sum(apply(gh, F) != apply(g, apply(h, F)) for F in tables)
    elapsed = time.perf_counter() - t
    ok = orbit_bad == 0 and law_bad == 0 and elapsed < 60
    assert record(4, ok, f"orbit-stabilizer violations {orbit_bad}/50, action-law violations "
                         f"{law_bad}/{20 * 256}, {elapsed:.1f}s (< 60s)")


def test_criterion_5_relative_error_trend():
    t = time.perf_counter()
    errs = [count_classes_exhaustive(2, 1, 1).relative_error,
            count_classes_exhaustive(2, 2, 2).relative_error,
            count_classes_conjugacy(2, 3, 3).relative_error]
    elapsed = time.perf_counter() - t
    ok = errs[0] > errs[1] > errs[2] and elapsed < 30 * 60
    detail = " -> ".join(f"{e} ({float(e):.6f})" for e in errs)
    assert record(5, ok, f"|ratio-1| along (2,1,1),(2,2,2),(2,3,3): {detail}; {elapsed:.1f}s")


def test_criterion_6_collision_sandwich():
    dims = (2, 2, 2)
    eps = nontrivial_stab_census(*dims)
    census = orbit_partition(*dims)
    p = collision_prob_exact(*dims, census=census)
    upper = Fraction(gamma_order(*dims), census.total)
    lower = (1 - eps) * upper
    squares_ok = p * census.total**2 == census.sum_of_squares() == \
        sum(s * s for _, s, _ in census.orbits)
    ok = lower <= p <= upper and squares_ok
    assert record(6, ok, f"eps={eps}; {lower} <= {p} <= {upper}; sum |O|^2 cross-check "
                         f"{'ok' if squares_ok else 'mismatch'}")


def test_criterion_7_monte_carlo():
    coll = mc_collision(2, 1, 1, 10_000, seed=2024, exact=Fraction(1, 2))
    exact_stab = nontrivial_stab_census(2, 2, 2)
    stab = mc_trivial_stab(2, 2, 2, 2000, seed=2024, exact=exact_stab)
    rerun_same = (mc_collision(2, 1, 1, 10_000, seed=2024, threads=4, exact=Fraction(1, 2)) == coll
                  and mc_trivial_stab(2, 2, 2, 2000, seed=2024, threads=3, exact=exact_stab) == stab)
    ok = coll.within_sigmas(3) and stab.within_sigmas(3) and rerun_same
    assert record(7, ok, f"collision {coll.estimate} vs 1/2 (3 sigma={3 * coll.sigma():.4f}); "
                         f"nontrivial stab {stab.estimate} vs {exact_stab}; "
                         f"reruns identical across thread counts: {rerun_same}")


def test_criterion_8_bound_evaluators():
    exps = [nontrivial_stab_bound(2, n, n).exponent for n in (6, 7, 8)]
    decreasing = exps[0] > exps[1] > exps[2]
    up = collision_upper_ea(2, 4, 4)
    exact = up.factor == agl_order(4, 2) ** 2 and up.scale == -64
    close = math.isclose(up.exponent, math.log2(agl_order(4, 2) ** 2) - 64, abs_tol=1e-12)
    ok = decreasing and exact and close
    assert record(8, ok, f"stab-bound exponents n=6,7,8: {', '.join(f'{e:.6f}' for e in exps)}; "
                         f"EA collision bound (2,4,4) = {up.factor} * 2^{up.scale} "
                         f"= {up.render()}")


def test_criterion_9_ea_implies_ccz():
    rng = make_rng(9)
    accepted = total = 0
    for dims in [(2, 1, 1), (2, 1, 2)]:
        for _ in range(50):
            F = random_table(rng, *dims)
            G = apply(random_element(rng, *dims), F)
            w = ccz_equivalent(F, G)
            total += 1
            accepted += w is not None and w.maps_graph(F, G)
    census = orbit_partition(2, 2, 2)
    consistent = equivalent = 0
    for _ in range(50):
        F, G = random_table(rng, 2, 2, 2), random_table(rng, 2, 2, 2)
        w = ea_equivalent(F, G)
        same = census.orbit_id(F) == census.orbit_id(G)
        equivalent += same
        consistent += (w is not None) == same and (w is None or apply(w, F) == G)
    ok = accepted == total and consistent == 50
    assert record(9, ok, f"CCZ accepted {accepted}/{total} EA pairs; EA verdicts consistent with "
                         f"census {consistent}/50 ({equivalent} equivalent pairs)")


if __name__ == "__main__":
    import sys
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
