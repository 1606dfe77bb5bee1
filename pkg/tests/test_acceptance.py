"""Acceptance suite: one test per release criterion, each printing a
pass/fail line (run with -s to see them).  Tolerances are pinned here;
"exact" means integer/rational equality, no epsilon.
"""

import contextlib
import math
import time
from fractions import Fraction

from ibltlab import (
    ExplicitScheme,
    HashKind,
    Iblt,
    KeyModel,
    TrialConfig,
    contains_stopping_submatrix,
    count_stopping_bruteforce,
    exact_failure_probability,
    iter_state_matrices,
    run_trials,
    union_bound,
)
from reference import STOPPING_COUNTS_10X10


@contextlib.contextmanager
def criterion(number, name):
    started = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"[acceptance] {number} {name}: FAIL "
              f"({time.perf_counter() - started:.2f}s)")
        raise
    print(f"[acceptance] {number} {name}: PASS "
          f"({time.perf_counter() - started:.2f}s)")


def test_01_census_rectangle_exact(invoke_cli):
    with criterion(1, "census rectangle 10x10, exact, <1s"):
        started = time.perf_counter()
        code, out, _ = invoke_cli(["ztable", "10", "10"])
        elapsed = time.perf_counter() - started
        assert code == 0
        rows = out.strip().splitlines()
        assert rows[0] == "ell,n,z"
        assert len(rows) == 101
        for line in rows[1:]:
            ell_s, n_s, z_s = line.split(",")
            assert int(z_s) == STOPPING_COUNTS_10X10[int(ell_s) - 1][int(n_s) - 1]
        assert elapsed < 1.0, f"took {elapsed:.3f}s"


def test_02_recurrence_equals_enumeration(census):
    with criterion(2, "recurrence = brute force up to 1e7 matrices, <2min"):
        started = time.perf_counter()
        pairs = [
            (ell, n)
            for ell in range(1, 13)
            for n in range(1, 24)
            if ell**n <= 10_000_000
        ]
        assert {(ell, n) for ell in range(1, 6) for n in range(1, 6)} <= set(pairs)
        for ell, n in pairs:
            assert census.count(ell, n) == count_stopping_bruteforce(ell, n), (ell, n)
        elapsed = time.perf_counter() - started
        assert elapsed < 120.0, f"took {elapsed:.1f}s over {len(pairs)} pairs"


def test_03_partition_identity(census):
    with criterion(3, "pivot-count partition identity on [1,12]^2, exact"):
        for ell in range(1, 13):
            for n in range(1, 13):
                total = census.count(ell, n) + sum(
                    math.factorial(c)
                    * math.comb(ell, c)
                    * math.comb(n, c)
                    * census.count(ell - c, n - c)
                    for c in range(1, min(ell, n) + 1)
                )
                assert total == ell**n, (ell, n)


def test_04_bound_dominates_and_is_tight_at_two(census):
    with criterion(4, "bound dominates exhaustive truth; tight at n=2"):
        for ell in range(1, 4):
            for n in range(1, 5):
                for k in range(1, 3):
                    exact = exact_failure_probability(ell, n, k)
                    clamped = union_bound(census, ell, n, k).total_clamped
                    assert float(exact) <= clamped, (ell, n, k)
        for ell in range(1, 9):
            for k in range(1, 4):
                exact = exact_failure_probability(ell, 2, k)
                assert exact == Fraction(1, ell**k), (ell, k)
                bound = union_bound(census, ell, 2, k).total
                assert bound == float(exact), (ell, k)


def test_05_listing_fails_exactly_on_stopping_sets():
    with criterion(5, "peeling/stopping duality over all 3x3 patterns, k in {1,2}"):
        ell = n = 3
        for k in (1, 2):
            checked = 0
            for sm in iter_state_matrices(ell, n, k):
                scheme = ExplicitScheme(
                    ell=ell,
                    k=k,
                    mapping={
                        j + 1: tuple(i * ell + sm.placements[i][j] for i in range(k))
                        for j in range(n)
                    },
                    b=8,
                )
                table = Iblt(scheme)
                for j in range(n):
                    table.insert(j + 1, j + 101)
                result = table.list_entries()
                assert (not result.complete) == contains_stopping_submatrix(sm)
                checked += 1
            assert checked == ell ** (n * k)


def test_06_error_floor_at_desk_scale(census):
    with criterion(6, "floor region estimate brackets the size-2 asymptote, <5min"):
        started = time.perf_counter()
        cfg = TrialConfig(n=210, m=840, k=3, b=32, trials=100_000, seed=0)
        report = run_trials(cfg, census=census)
        elapsed = time.perf_counter() - started
        floor = 21945 / 280**3  # ~9.996e-4; ~100 expected failures
        assert report.p2 == floor
        assert report.ci_low <= floor <= report.ci_high, (
            report.failures,
            report.ci_low,
            report.ci_high,
        )
        assert elapsed < 300.0, f"took {elapsed:.1f}s"


def test_07_hash_count_tradeoff(census):
    # Compared at equal total cells m (= 3*ell of the 3-hash curve): more
    # hash functions lower the floor but push the waterfall to larger m.
    with criterion(7, "k=6 beats k=3 at m=600 and loses at m=120, <1s"):
        started = time.perf_counter()
        n = 100
        floor_k3 = union_bound(census, 600 // 3, n, 3).total
        floor_k6 = union_bound(census, 600 // 6, n, 6).total
        wall_k3 = union_bound(census, 120 // 3, n, 3).total
        wall_k6 = union_bound(census, 120 // 6, n, 6).total
        elapsed = time.perf_counter() - started
        assert floor_k6 < floor_k3
        assert wall_k6 > wall_k3
        assert elapsed < 1.0, f"took {elapsed:.3f}s"


def test_08_collision_avoiding_scheme_lowers_the_floor(census):
    with criterion(8, "field-split scheme: no size-2 residuals, lower floor"):
        trials = 100_000
        conventional = run_trials(
            TrialConfig(n=210, m=768, k=3, b=32, trials=trials, seed=0),
            census=census,
        )
        avoiding = run_trials(
            TrialConfig(
                n=210,
                m=768,
                k=3,
                b=24,
                trials=trials,
                seed=0,
                scheme=HashKind.SS_AVOIDING,
                key_model=KeyModel.DISTINCT_UNIFORM,
            ),
            census=census,
        )
        assert avoiding.size2_residual_failures == 0
        floor = conventional.p2
        assert avoiding.p_hat < conventional.p_hat or (
            avoiding.p_hat < floor and conventional.p_hat < floor
        )


def test_09_simulation_is_deterministic(invoke_cli):
    with criterion(9, "identical flags give byte-identical CSV, any workers"):
        argv = [
            "simulate", "--n", "50", "--k", "3", "--m", "150",
            "--trials", "20000", "--seed", "5",
        ]
        runs = [
            invoke_cli(argv),
            invoke_cli(argv),
            invoke_cli(argv + ["--workers", "1"]),
            invoke_cli(argv + ["--workers", "4"]),
        ]
        assert all(code == 0 for code, _, _ in runs)
        bodies = {out for _, out, _ in runs}
        assert len(bodies) == 1
