# -*- coding: utf-8 -*-

"""
K-Sets Module
Triangular distance, the K-sets and dual K-sets algorithms, normalized
modularity and the kernel K-means connection
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .cohesion import CohesionMatrix, cohesion_sets, dual_distance
from .config import Defaults
from .errors import DomainError
from .hierarchical import Partition, partition_sets
from .metric_core import DistanceMatrix, avg_distance, check_point, members

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MoveRecord:
    """
    One reassignment decision.

    delta_from is the triangular distance to the current set and delta_to the
    distance to the chosen set. A skipped record marks a point that would have
    moved but is the last member of its set. Set ids are those of the run's
    final partition.
    """

    pass_index: int
    point: int
    source: int
    target: int
    delta_from: float
    delta_to: float
    skipped: bool = False


@dataclass(frozen=True)
class KSetsRun:
    """
    Outcome of a K-sets or dual K-sets run.

    r_trace starts with the normalized modularity of the initial partition
    and gains one value after every move. initial holds the starting labels in
    the id space of final, so applying the unskipped history to it in order
    reproduces final.assignment.
    """

    final: Partition
    initial: tuple
    history: tuple
    r_trace: tuple
    passes: int
    converged: bool

    @property
    def moves(self) -> int:
        return sum(1 for m in self.history if not m.skipped)

    @property
    def skipped(self) -> int:
        return sum(1 for m in self.history if m.skipped)


def triangular_distance(D: DistanceMatrix, x: int, S) -> float:
    """
    Triangular distance from a point to a set.

    Args:
        D (DistanceMatrix): Distances
        x (int): Point
        S: Nonempty point set

    Returns:
        float: 2 dbar({x}, S) - dbar(S, S); nonnegative when D is a metric
    """
    return 2.0 * avg_distance(D, (x,), S) - avg_distance(D, S, S)


def triangular_distance_cohesion(G: CohesionMatrix, x: int, S) -> float:
    """
    Triangular distance computed from a cohesion measure.

    Returns:
        float: g(x,x) - (2/|S|) gamma({x}, S) + (1/|S|^2) gamma(S, S)
    """
    x = check_point(x, G.n)
    size = len(members(S, G.n))
    return float(G.values[x, x] - 2.0 / size * cohesion_sets(G, (x,), S)
                 + cohesion_sets(G, S, S) / size ** 2)


def normalized_modularity(G: CohesionMatrix, P: Partition) -> float:
    """
    Normalized modularity R: within-set cohesion divided by set size, summed.

    Args:
        G (CohesionMatrix): Cohesion measure
        P (Partition): Partition of the same points

    Returns:
        float: sum over k of gamma(S_k, S_k) / |S_k|
    """
    return float(sum(cohesion_sets(G, s, s) / len(s) for s in partition_sets(G, P)))


def ksets_objective(D: DistanceMatrix, P: Partition) -> float:
    """Sum over points of their average distance to their own set (what K-sets lowers)."""
    return float(sum(avg_distance(D, (x,), s) for s in partition_sets(D, P) for x in s))


def kernel_identity_check(G: CohesionMatrix, sigma: float, x: int, S) -> tuple:
    """
    Compare the kernel view of the triangular distance with its closed form.

    The Gram matrix sigma*I + G is treated as inner products of feature
    vectors; lhs is the squared distance from x to the centroid of S expanded
    from Gram entries, rhs is (1 - 2/|S| [x in S] + 1/|S|) sigma + Delta(x, S).

    Args:
        G (CohesionMatrix): Cohesion measure
        sigma (float): Diagonal shift
        x (int): Point
        S: Nonempty point set

    Returns:
        tuple: (lhs, rhs)
    """
    x = check_point(x, G.n)
    idx = members(S, G.n)
    size = len(idx)
    gram = sigma * np.eye(G.n) + G.values
    v = np.zeros(G.n)
    v[idx] -= 1.0 / size
    v[x] += 1.0
    lhs = float(v @ gram @ v)
    inside = 1.0 if x in set(idx.tolist()) else 0.0
    rhs = (1.0 - 2.0 / size * inside + 1.0 / size) * sigma + triangular_distance(dual_distance(G), x, S)
    return lhs, rhs


def random_partition(n: int, K: int, rng: np.random.Generator) -> Partition:
    """
    Random assignment of n points to K nonempty sets.

    K distinct points, chosen at random, seed one set each; the remaining
    points draw their set uniformly.
    """
    if not 1 <= K <= n:
        raise DomainError(f"K={K} must lie in [1, {n}]")
    labels = rng.integers(0, K, size=n)
    labels[rng.permutation(n)[:K]] = np.arange(K)
    return Partition.from_labels(labels.tolist())


class _SetSums:
    """
    Per-set running sums of a pairwise matrix M.

    rows[x, k] = sum of M[x, y] over y in S_k and inner[k] = sum of M over
    S_k x S_k; a move updates both in O(n).
    """

    def __init__(self, M: np.ndarray, labels: np.ndarray, K: int):
        self.M = M
        self.labels = labels.copy()
        onehot = np.zeros((M.shape[0], K))
        onehot[np.arange(M.shape[0]), labels] = 1.0
        self.rows = M @ onehot
        self.inner = np.einsum('xk,xk->k', onehot, self.rows)
        self.sizes = onehot.sum(axis=0)

    def move(self, x: int, source: int, target: int):
        col = self.M[:, x]
        self.inner[source] -= 2.0 * self.rows[x, source] - self.M[x, x]
        self.rows[:, source] -= col
        self.inner[target] += 2.0 * self.rows[x, target] + self.M[x, x]
        self.rows[:, target] += col
        self.sizes[source] -= 1
        self.sizes[target] += 1
        self.labels[x] = target


class _DistanceSets(_SetSums):
    def __init__(self, D: DistanceMatrix, labels, K):
        super().__init__(D.values, labels, K)
        self.totals = D.values.sum(axis=1)
        self.grand = D.grand_mean

    def deltas(self, x: int) -> np.ndarray:
        return 2.0 * self.rows[x] / self.sizes - self.inner / self.sizes ** 2

    def objective(self) -> float:
        n = self.M.shape[0]
        omega = np.bincount(self.labels, weights=self.totals, minlength=len(self.sizes))
        return float(np.sum(2.0 * omega / n - self.sizes * self.grand - self.inner / self.sizes))


class _CohesionSets(_SetSums):
    def deltas(self, x: int) -> np.ndarray:
        return self.M[x, x] - 2.0 * self.rows[x] / self.sizes + self.inner / self.sizes ** 2

    def objective(self) -> float:
        return float(np.sum(self.inner / self.sizes))


def _initial(n: int, K: int, init, seed) -> Partition:
    if not 2 <= K <= n:
        raise DomainError(f"K={K} must lie in [2, {n}]")
    if init is None:
        rng = np.random.default_rng(Defaults.SEED if seed is None else seed)
        return random_partition(n, K, rng)
    if isinstance(init, Partition):
        part = init
    elif len(init) and not isinstance(init[0], (int, np.integer)):
        part = Partition.from_sets(init, n)
    else:
        part = Partition.from_labels(init)
    if part.n != n or part.K != K:
        raise DomainError(f"initial partition has {part.K} sets over {part.n} points, expected {K} over {n}")
    return part


def _iterate(state, n: int, max_passes: int, tol: float, label: str) -> tuple:
    history, r_trace = [], [state.objective()]
    converged, passes = False, 0
    for pass_index in range(1, max_passes + 1):
        passes = pass_index
        changed = False
        for x in range(n):
            current = int(state.labels[x])
            deltas = state.deltas(x)
            # sets within tol of the best tie; the lowest id wins
            target = int(np.flatnonzero(deltas <= deltas.min() + tol)[0])
            if not deltas[target] < deltas[current] - tol:
                continue
            if state.sizes[current] == 1:
                history.append(MoveRecord(pass_index, x, current, target,
                                          float(deltas[current]), float(deltas[target]), skipped=True))
                logger.debug(f"{label}: point {x} is alone in set {current}, move skipped")
                continue
            state.move(x, current, target)
            history.append(MoveRecord(pass_index, x, current, target,
                                      float(deltas[current]), float(deltas[target])))
            r_trace.append(state.objective())
            changed = True
        if not changed:
            converged = True
            break
    if not converged:
        logger.warning(f"{label} stopped at max_passes={max_passes} before converging")
    return history, r_trace, passes, converged


def _run(state, part: Partition, max_passes: int, tol: float, label: str) -> KSetsRun:
    n = part.n
    logger.info(f"{label}: {n} points, K={part.K}")
    history, r_trace, passes, converged = _iterate(state, n, max_passes, tol, label)
    final = Partition.from_labels(state.labels.tolist())
    # no set empties during a run, so the relabeling is a bijection on set ids
    remap = dict(zip(state.labels.tolist(), final.assignment))
    history = [dataclasses.replace(m, source=remap[m.source], target=remap[m.target]) for m in history]
    initial = tuple(remap[c] for c in part.assignment)
    run = KSetsRun(final, initial, tuple(history), tuple(r_trace), passes, converged)
    logger.info(f"{label}: {run.moves} moves in {passes} passes, R={r_trace[-1]}")
    return run


def run_ksets(D: DistanceMatrix, K: int, init: Union[Partition, Sequence, None] = None,
              seed: Optional[int] = None, max_passes: int = Defaults.MAX_PASSES,
              tolerance: Optional[float] = None) -> KSetsRun:
    """
    K-sets: reassign each point to the set with the smallest triangular distance.

    Points are visited in index order. A point moves only when the best set
    beats its current one by more than the tolerance; ties go to the current
    set, then to the lowest set id. The last member of a set never moves.

    Args:
        D (DistanceMatrix): Distances (a metric for the convergence guarantee)
        K (int): Number of sets, 2 <= K <= n
        init: Initial Partition, list of K sets or label list; random when None
        seed (int, optional): Seed for the random initial partition
        max_passes (int): Upper bound on full passes
        tolerance (float, optional): Relative move tolerance, scaled by max d

    Returns:
        KSetsRun: Final partition, move history and R trace
    """
    part = _initial(D.n, K, init, seed)
    tol = Defaults.scaled_tolerance(D.values, tolerance)
    return _run(_DistanceSets(D, part.labels, K), part, max_passes, tol, 'K-sets')


def run_dual_ksets(G: CohesionMatrix, K: int, init: Union[Partition, Sequence, None] = None,
                   seed: Optional[int] = None, max_passes: int = Defaults.MAX_PASSES,
                   tolerance: Optional[float] = None) -> KSetsRun:
    """
    Dual K-sets: the K-sets iteration driven directly by a cohesion measure.

    The move tolerance is scaled by the largest dual distance so that a run on
    cohesion_matrix(D) takes exactly the decisions run_ksets takes on D.

    Args:
        G (CohesionMatrix): Cohesion measure (need not be positive semi-definite)
        K (int): Number of sets
        init: As for run_ksets
        seed (int, optional): Seed for the random initial partition
        max_passes (int): Upper bound on full passes
        tolerance (float, optional): Relative move tolerance

    Returns:
        KSetsRun: Final partition, move history and R trace
    """
    part = _initial(G.n, K, init, seed)
    tol = Defaults.scaled_tolerance(dual_distance(G).values, tolerance)
    return _run(_CohesionSets(G.values, part.labels, K), part, max_passes, tol, 'Dual K-sets')
