# -*- coding: utf-8 -*-

import itertools

import numpy as np
import pytest

from cohesion_clustering.cohesion import cohesion_matrix, graph_cohesion, is_cluster
from cohesion_clustering.errors import DomainError
from cohesion_clustering.hierarchical import Partition
from cohesion_clustering.ksets import (
    MoveRecord,
    kernel_identity_check,
    ksets_objective,
    normalized_modularity,
    random_partition,
    run_dual_ksets,
    run_ksets,
    triangular_distance,
    triangular_distance_cohesion,
)
from cohesion_clustering.metric_core import DistanceMatrix, avg_distance

from .conftest import line_metric

LINE_INIT = [(0, 2), (1, 3)]


def test_triangular_distance_on_line(L4):
    assert triangular_distance(L4, 2, (0, 1)) == pytest.approx(2.5)
    assert triangular_distance(L4, 3, (0, 1, 2)) == pytest.approx(2 * 3 - 8 / 9)
    assert triangular_distance_cohesion(cohesion_matrix(L4), 2, (0, 1)) == pytest.approx(2.5)
    with pytest.raises(DomainError):
        triangular_distance(L4, 0, ())


def test_normalized_modularity_on_line(L4):
    G = cohesion_matrix(L4)
    assert normalized_modularity(G, Partition.from_sets([(0, 1, 2), (3,)])) == pytest.approx(2.875 / 3 + 2.875)
    assert normalized_modularity(G, Partition.from_sets([(0, 1), (2, 3)])) == pytest.approx(3.5)


def test_line_golden_run(L4):
    run = run_ksets(L4, 2, init=LINE_INIT)
    assert run.final == Partition.from_sets([(0, 1, 2), (3,)])
    assert run.moves == 1
    assert run.passes == 2
    assert run.converged
    assert run.history == (MoveRecord(1, 1, 1, 0, pytest.approx(1.5), pytest.approx(1.0)),)
    assert run.r_trace[0] == pytest.approx(1.5)
    assert run.r_trace[-1] == pytest.approx(3.8333333333333335, abs=1e-9)


def test_dual_run_reproduces_trace(L4):
    primal = run_ksets(L4, 2, init=LINE_INIT)
    dual = run_dual_ksets(cohesion_matrix(L4), 2, init=LINE_INIT)
    assert dual.final == primal.final
    assert [(m.point, m.source, m.target) for m in dual.history] == \
        [(m.point, m.source, m.target) for m in primal.history]
    np.testing.assert_allclose(dual.r_trace, primal.r_trace, atol=1e-9)


def test_dual_equivalence_on_pool(pool):
    for i, D in enumerate(pool):
        K = 2 + i % 2 if D.n > 3 else 2
        primal = run_ksets(D, K, seed=i)
        dual = run_dual_ksets(cohesion_matrix(D), K, seed=i)
        assert dual.final == primal.final
        assert [(m.point, m.source, m.target, m.skipped) for m in dual.history] == \
            [(m.point, m.source, m.target, m.skipped) for m in primal.history]


def test_ties_go_to_lowest_set_id():
    # point 2 sits halfway between the singletons {0} and {1}
    D = DistanceMatrix.from_points([[-1.0, 0.0], [1.0, 0.0], [0.0, 0.0], [5.0, 0.0]])
    for run in (run_ksets(D, 3, init=[0, 1, 2, 2]), run_dual_ksets(cohesion_matrix(D), 3, init=[0, 1, 2, 2])):
        assert [(m.point, m.source, m.target) for m in run.history] == [(2, 2, 0)]
        assert run.final == Partition.from_sets([(0, 2), (1,), (3,)])


def test_objective_identities(pool):
    rng = np.random.default_rng(11)
    for D in pool:
        G = cohesion_matrix(D)
        K = min(3, D.n)
        P = random_partition(D.n, K, rng)
        total = sum(triangular_distance(D, x, s) for s in P.sets for x in s)
        assert total == pytest.approx(np.trace(G.values) - normalized_modularity(G, P), abs=1e-9)
        assert total == pytest.approx(ksets_objective(D, P), abs=1e-9)
        for x in range(D.n):
            for s in P.sets:
                assert triangular_distance(D, x, s) >= -1e-9
                assert triangular_distance_cohesion(G, x, s) == pytest.approx(triangular_distance(D, x, s), abs=1e-9)


def test_adding_a_point_inequalities(pool):
    for D in (d for d in pool if d.n <= 6):
        n = D.n
        for size in range(1, n):
            for S in itertools.combinations(range(n), size):
                for x in (y for y in range(n) if y not in S):
                    grown = S + (x,)
                    assert sum(triangular_distance(D, y, grown) for y in grown) <= \
                        sum(triangular_distance(D, y, S) for y in grown) + 1e-9
                    assert sum(triangular_distance(D, y, S) for y in S) <= \
                        sum(triangular_distance(D, y, grown) for y in S) + 1e-9


@pytest.mark.parametrize("seed", range(200))
def test_monotone_convergence(seed, pool):
    D = pool[seed % len(pool)]
    K = 2 + seed % max(1, min(3, D.n - 1))
    run = run_ksets(D, K, seed=seed)
    assert run.converged
    assert np.all(np.diff(run.r_trace) > 0)
    sets = run.final.sets
    for a, b in itertools.combinations(sets, 2):
        gap = 2 * avg_distance(D, a, b) - avg_distance(D, a, a) - avg_distance(D, b, b)
        assert gap >= -1e-9


def test_two_set_results_are_clusters(pool):
    for i, D in enumerate(pool):
        G = cohesion_matrix(D)
        run = run_ksets(D, 2, seed=i)
        assert all(is_cluster(G, s) for s in run.final.sets)


def _replay(run):
    labels = list(run.initial)
    yield list(labels)
    for m in run.history:
        if m.skipped:
            continue
        assert labels[m.point] == m.source
        labels[m.point] = m.target
        yield list(labels)


@pytest.mark.parametrize("seed", range(20))
def test_incremental_sums_match_recomputation(seed):
    rng = np.random.default_rng(seed)
    D = DistanceMatrix.from_points(rng.normal(size=(int(rng.integers(10, 51)), 2)))
    G = cohesion_matrix(D)
    for run in (run_ksets(D, 3, seed=seed), run_dual_ksets(G, 3, seed=seed)):
        states = list(_replay(run))
        assert len(states) == len(run.r_trace)
        for labels, r in zip(states, run.r_trace):
            assert r == pytest.approx(normalized_modularity(G, Partition.from_labels(labels)), abs=1e-9)


def test_history_uses_final_set_ids(pool):
    for i, D in enumerate(pool):
        run = run_ksets(D, 2, seed=i)
        *_, labels = _replay(run)
        assert tuple(labels) == run.final.assignment
        last = {m.point: m.target for m in run.history if not m.skipped}
        assert all(run.final.assignment[x] == k for x, k in last.items())


def test_random_partition_fills_every_set():
    rng = np.random.default_rng(0)
    for n, K in ((30, 30), (30, 29), (5, 1), (100, 7)):
        P = random_partition(n, K, rng)
        assert P.n == n
        assert P.K == K
    with pytest.raises(DomainError):
        random_partition(3, 4, rng)


def test_one_set_per_point():
    D = line_metric(range(30))
    run = run_ksets(D, 30, seed=0)
    assert run.converged
    assert run.moves == 0
    assert run.final.K == 30


@pytest.mark.parametrize("sigma", [0.0, 1.0, 10.0])
def test_kernel_identity(sigma, pool):
    rng = np.random.default_rng(int(sigma))
    for D in pool:
        G = cohesion_matrix(D)
        for _ in range(5):
            size = int(rng.integers(1, D.n + 1))
            S = tuple(rng.choice(D.n, size=size, replace=False))
            x = int(rng.integers(D.n))
            lhs, rhs = kernel_identity_check(G, sigma, x, S)
            assert lhs == pytest.approx(rhs, abs=1e-9 * max(1.0, abs(rhs)))


def test_kernel_identity_on_line(L4):
    G = cohesion_matrix(L4)
    lhs, rhs = kernel_identity_check(G, 1.0, 2, (0, 1))
    assert rhs == pytest.approx(4.0)
    assert lhs == pytest.approx(4.0)
    _, rhs = kernel_identity_check(G, 1.0, 0, (0, 1))
    assert rhs == pytest.approx(0.5 + triangular_distance(L4, 0, (0, 1)))


def test_point_out_of_range(L4):
    G = cohesion_matrix(L4)
    for x in (-1, 4):
        with pytest.raises(DomainError):
            triangular_distance_cohesion(G, x, (0, 1))
        with pytest.raises(DomainError):
            kernel_identity_check(G, 1.0, x, (0, 1))


def test_dual_run_on_non_psd_matrix(gamma_not_psd):
    for seed in range(10):
        run = run_dual_ksets(gamma_not_psd, 2, seed=seed)
        assert run.converged
        assert np.all(np.diff(run.r_trace) > 0)


def test_dual_run_on_karate(karate):
    G = graph_cohesion(karate)
    run = run_dual_ksets(G, 2, seed=1)
    assert run.converged
    assert run.final.K == 2


def test_singleton_never_emptied():
    # not a metric: point 0 has negative triangular distance to the far pair {1, 2}
    d = np.array([[0.0, 1.0, 1.0], [1.0, 0.0, 10.0], [1.0, 10.0, 0.0]])
    run = run_ksets(DistanceMatrix(d), 2, init=[0, 1, 1])
    assert run.final.K == 2
    skipped = [m for m in run.history if m.skipped]
    assert [(m.point, m.source, m.target) for m in skipped] == [(0, 0, 1)]
    assert run.final == Partition.from_sets([(0, 1), (2,)])


def test_invalid_k(L4):
    with pytest.raises(DomainError):
        run_ksets(L4, 1)
    with pytest.raises(DomainError):
        run_ksets(L4, 5)
    with pytest.raises(DomainError):
        run_ksets(L4, 3, init=LINE_INIT)


def test_seeded_runs_are_reproducible(pool):
    D = pool[2]
    assert run_ksets(D, 2, seed=9).history == run_ksets(D, 2, seed=9).history
