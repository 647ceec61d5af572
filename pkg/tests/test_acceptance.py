"""One test per acceptance criterion; each prints a single PASS/FAIL line.

Ground truth always comes from :mod:`dynorient.oracle` (subset enumeration
or orientation enumeration), never from the maintainers themselves.  The
lines are also collected and echoed in the pytest terminal summary.
"""
from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction
from functools import cache

import pytest

from _support import (
    ALGORITHMS,
    BACKENDS,
    apply,
    edges_after,
    er_mixed_ops,
    k4_edges,
    random_ops,
    random_planar_triangulation,
    random_tree,
    report_criterion,
)
from dynorient.bench.stats import geometric_mean, performance_profile, profile_value
from dynorient.dynsolvers import ImprovedDynOpt, StrongDynOpt, make_maintainer
from dynorient.oracle import exhaustive_orientation_delta, pseudoarboricity_bruteforce, scan_improving_paths
from dynorient.static import venkateswaran_solve

EXACTNESS_SEQUENCES = 1000


def exactness_instance(seed: int) -> tuple[int, list]:
    return 4 + seed % 7, er_mixed_ops(seed, 4 + seed % 7)


@cache
def oracle_trajectory(seed: int) -> tuple[int, ...]:
    n, ops = exactness_instance(seed)
    present: set[tuple[int, int]] = set()
    out = []
    for ins, u, v in ops:
        key = (min(u, v), max(u, v))
        (present.add if ins else present.remove)(key)
        out.append(pseudoarboricity_bruteforce(present, n).optimal_delta)
    return tuple(out)


def test_criterion_1_exactness_after_every_update():
    start = time.perf_counter()
    mismatches: list[str] = []
    updates = 0
    for seed in range(EXACTNESS_SEQUENCES):
        n, ops = exactness_instance(seed)
        truth = oracle_trajectory(seed)
        updates += len(ops)
        for alg, backend in itertools.product(ALGORITHMS, BACKENDS):
            m = make_maintainer(alg, backend, n)
            for i, op in enumerate(ops):
                apply(m, op)
                if m.delta() != truth[i]:
                    mismatches.append(f"seed {seed} {alg}/{backend} update {i}: {m.delta()} != {truth[i]}")
                    break
    elapsed = time.perf_counter() - start
    ok = not mismatches and elapsed < 120
    detail = f"{EXACTNESS_SEQUENCES} sequences, {updates} updates x 6 maintainers, {elapsed:.1f}s"
    if mismatches:
        detail += f"; first mismatch {mismatches[0]}"
    report_criterion(1, "delta() equals the subset oracle after every update", ok, detail)


def test_criterion_2_oracle_self_consistency():
    start = time.perf_counter()
    pairs = list(itertools.combinations(range(6), 2))
    bad = []
    for mask in range(1 << len(pairs)):
        edges = [e for j, e in enumerate(pairs) if mask >> j & 1]
        if pseudoarboricity_bruteforce(edges, 6).optimal_delta != exhaustive_orientation_delta(edges, 6):
            bad.append(edges)
    rng = random.Random(2024)
    for _ in range(200):
        n = rng.randint(2, 12)
        all_pairs = list(itertools.combinations(range(n), 2))
        edges = rng.sample(all_pairs, rng.randint(0, min(20, len(all_pairs))))
        if pseudoarboricity_bruteforce(edges, n).optimal_delta != exhaustive_orientation_delta(edges, n):
            bad.append(edges)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 300
    detail = f"{1 << len(pairs)} labeled n=6 graphs + 200 random m<=20, {len(bad)} disagreements, {elapsed:.1f}s"
    report_criterion(2, "subset oracle equals orientation enumeration", ok, detail)


def test_criterion_3_invariant_scans():
    violations: list[str] = []
    checks = 0
    for seed in range(EXACTNESS_SEQUENCES):
        n, ops = exactness_instance(seed)
        for backend in BACKENDS:
            strong, improved = StrongDynOpt(n, backend), ImprovedDynOpt(n, backend)
            for i, op in enumerate(ops):
                apply(strong, op)
                apply(improved, op)
                checks += 2
                if scan_improving_paths(strong.orientation()) is not None:
                    violations.append(f"strong/{backend} seed {seed} update {i}")
                    break
                if scan_improving_paths(improved.orientation(), from_peaks_only=True) is not None:
                    violations.append(f"improved/{backend} seed {seed} update {i}")
                    break
    detail = f"{checks} scans, {len(violations)} violations"
    if violations:
        detail += f"; first {violations[0]}"
    report_criterion(3, "no improving path (strong: anywhere, improved: from a peak)", not violations, detail)


def test_criterion_4_trajectory_agreement():
    rng = random.Random(4)
    differing: list[int] = []
    total_ops = 0
    max_n = max_m = 0
    for idx in range(100):
        n = rng.randint(2, 64)
        ops = random_ops(rng, n, rng.randint(1, 512), p_delete=rng.uniform(0.0, 0.5))
        total_ops += len(ops)
        max_n = max(max_n, n)
        max_m = max(max_m, len(edges_after(ops)))
        trajectories = set()
        for alg, backend in itertools.product(ALGORITHMS, BACKENDS):
            m = make_maintainer(alg, backend, n)
            traj = []
            for op in ops:
                apply(m, op)
                traj.append(m.delta())
            trajectories.add(tuple(traj))
        if len(trajectories) != 1:
            differing.append(idx)
    detail = f"100 sequences, {total_ops} updates, n<={max_n}, m<={max_m}, {len(differing)} disagreeing"
    report_criterion(4, "identical delta trajectories across 3 algorithms x 2 backends", not differing, detail)


def _search_counts(edges, backend):
    improved, strong = ImprovedDynOpt(0, backend), StrongDynOpt(0, backend)
    for u, v in edges:
        improved.insert(u, v)
        strong.insert(u, v)
    return improved.stats().searches_started, strong.stats().searches_started


def test_criterion_5_search_counts_on_insertions():
    rng = random.Random(5)
    violations = 0
    for _ in range(200):
        n = rng.randint(2, 40)
        ops = random_ops(rng, n, rng.randint(1, 300), p_delete=0.0)
        for backend in BACKENDS:
            imp, strong = _search_counts([(u, v) for _, u, v in ops], backend)
            violations += imp > strong
    star = [(0, i) for i in range(1, 6)]
    star_counts = {b: _search_counts(star, b) for b in BACKENDS}
    leaves = k4_edges() + [(i, 4 + i) for i in range(4)]
    leaf_counts = {b: _search_counts(leaves, b) for b in BACKENDS}
    strict_on_star = all(imp < strong for imp, strong in star_counts.values())
    detail = (
        f"<= held on {400 - violations}/400 insert-only runs; "
        f"grown star improved/strong {star_counts['bfs'][0]}/{star_counts['bfs'][1]} (strict required); "
        f"K4 plus pendant leaves {leaf_counts['bfs'][0]}/{leaf_counts['bfs'][1]}"
    )
    report_criterion(5, "improved starts no more searches than strong, strictly fewer on the grown star", violations == 0 and strict_on_star, detail)


def test_criterion_6_static_solver():
    wrong: list[str] = []
    solved = 0
    for seed in range(EXACTNESS_SEQUENCES):
        n, ops = exactness_instance(seed)
        truth = oracle_trajectory(seed)
        present: set[tuple[int, int]] = set()
        for i, (ins, u, v) in enumerate(ops):
            key = (min(u, v), max(u, v))
            (present.add if ins else present.remove)(key)
            g, k = venkateswaran_solve(sorted(present), n)
            solved += 1
            if k != truth[i] or g.delta != k:
                wrong.append(f"seed {seed} update {i}: {k} != {truth[i]}")
    rng = random.Random(6)
    canned = [("K4", k4_edges(), 0, 2)]
    canned += [(f"tree n={n}", random_tree(rng, n), n, 1) for n in (2, 5, 17, 60, 300)]
    canned += [(f"cycle n={n}", [(i, (i + 1) % n) for i in range(n)], n, 1) for n in (3, 5, 17, 60, 300)]
    for name, edges, n, expected in canned:
        _, k = venkateswaran_solve(edges, n)
        if k != expected:
            wrong.append(f"{name}: {k} != {expected}")
    detail = f"{solved} graphs from criterion 1 plus {len(canned)} canned, {len(wrong)} wrong"
    if wrong:
        detail += f"; first {wrong[0]}"
    report_criterion(6, "static solver k equals the oracle; K4=2, trees and cycles=1", not wrong, detail)


def test_criterion_7_planar_triangulations():
    rng = random.Random(7)
    wrong: list[str] = []
    updates = 0
    for idx in range(300):
        n = rng.randint(3, 10)
        edges = random_planar_triangulation(rng, n)
        order = edges[:]
        rng.shuffle(order)
        teardown = order[:]
        rng.shuffle(teardown)
        ops = [(True, u, v) for u, v in order] + [(False, u, v) for u, v in teardown]
        present: set[tuple[int, int]] = set()
        truth = []
        for ins, u, v in ops:
            (present.add if ins else present.remove)((u, v))
            truth.append(pseudoarboricity_bruteforce(present, n).optimal_delta)
        updates += len(ops)
        for alg, backend in itertools.product(ALGORITHMS, BACKENDS):
            m = make_maintainer(alg, backend, n)
            for i, op in enumerate(ops):
                apply(m, op)
                if m.delta() != truth[i]:
                    wrong.append(f"instance {idx} {alg}/{backend} update {i}")
                    break
    detail = f"300 triangulations n<=10, {updates} updates x 6 maintainers, {len(wrong)} mismatches"
    report_criterion(7, "all maintainers optimal on random planar triangulations", not wrong, detail)


@pytest.mark.slow
def test_criterion_8_desk_scale_smoke():
    n, inserts = 10_000, 100_000
    rng = random.Random(8)
    present: set[tuple[int, int]] = set()
    order = []
    while len(order) < inserts:
        u, v = rng.randrange(n), rng.randrange(n)
        key = (min(u, v), max(u, v))
        if u != v and key not in present:
            present.add(key)
            order.append((u, v))

    m = ImprovedDynOpt(n)
    tighten_searches = 0
    sweep = m.tighten_outdegree

    def counted_sweep() -> None:
        nonlocal tighten_searches
        before = m.stats().searches_started
        sweep()
        tighten_searches += m.stats().searches_started - before

    m.tighten_outdegree = counted_sweep
    insert = m.insert
    start = time.perf_counter()
    for u, v in order:
        insert(u, v)
    elapsed = time.perf_counter() - start
    searches = m.stats().searches_started
    ok = elapsed < 10 and searches <= inserts + tighten_searches
    detail = (
        f"improved/{m.backend.value}: {inserts} inserts at n={n} in {elapsed:.2f}s wall, "
        f"{searches} searches (bound {inserts + tighten_searches}), final delta {m.delta()}"
    )
    report_criterion(8, "100k random insertions at n=10k under 10 s", ok, detail)


def test_criterion_9_methodology_examples():
    checks = {
        "gm[2,8]=4": geometric_mean([2, 8]) == 4,
        "gm[5]=5": geometric_mean([5]) == 5,
        "gm[1,1,1]=1": geometric_mean([1, 1, 1]) == 1,
    }
    single = performance_profile({"A": {"i": 3.0}})
    checks["single algorithm"] = profile_value(single["A"], 1.0) == 1
    two = performance_profile({"A": {"i": 1.0}, "B": {"i": 2.0}})
    checks["A:1,B:2"] = (
        profile_value(two["A"], 1.0) == 1
        and profile_value(two["B"], 1.0) == 0
        and profile_value(two["B"], 1.999999) == 0
        and profile_value(two["B"], 2.0) == 1
    )
    three = performance_profile({"A": {"a": 1, "b": 1, "c": 5}, "B": {"a": 3, "b": 2, "c": 1}})
    checks["2 of 3"] = Fraction(profile_value(three["A"], 1.0)).limit_denominator(10) == Fraction(2, 3)
    failed = [name for name, ok in checks.items() if not ok]
    detail = f"{len(checks) - len(failed)}/{len(checks)} examples" + (f"; failed {failed}" if failed else "")
    report_criterion(9, "geometric mean and performance profile examples", not failed, detail)
