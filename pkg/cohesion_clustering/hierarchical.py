# -*- coding: utf-8 -*-

"""
Hierarchical Module
Agglomerative merging of cohesive sets, modularity and dendrogram output
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .cohesion import CohesionMatrix, cohesion_sets
from .config import Defaults
from .errors import DomainError
from .metric_core import PointSet, square_array

logger = logging.getLogger(__name__)


class MergePolicy(Enum):
    """How the next pair is picked among the cohesive ones."""
    GREEDY_MAX = 'greedy_max'
    FIRST_FOUND = 'first_found'


@dataclass(frozen=True)
class Partition:
    """
    Assignment of n points to K nonempty disjoint sets.

    Cluster ids are 0..K-1 in order of each set's smallest member.
    """

    assignment: tuple

    def __post_init__(self):
        raw = [int(c) for c in self.assignment]
        # relabel by first appearance so equal partitions compare equal
        order = {}
        for c in raw:
            order.setdefault(c, len(order))
        object.__setattr__(self, 'assignment', tuple(order[c] for c in raw))

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "Partition":
        return cls(tuple(labels))

    @classmethod
    def from_sets(cls, sets: Sequence, n: Optional[int] = None) -> "Partition":
        """
        Build a partition from its sets.

        Raises:
            DomainError: If a set is empty, sets overlap or they miss a point
        """
        point_sets = [PointSet.of(s) for s in sets]
        total = sum(len(s) for s in point_sets)
        n = total if n is None else n
        labels = [-1] * n
        for k, s in enumerate(point_sets):
            if not len(s):
                raise DomainError(f"set {k} of the partition is empty")
            for x in s:
                if x >= n:
                    raise DomainError(f"point {x} outside [0, {n})")
                if labels[x] != -1:
                    raise DomainError(f"point {x} belongs to two sets")
                labels[x] = k
        if -1 in labels:
            raise DomainError(f"point {labels.index(-1)} is not covered by the partition")
        return cls(tuple(labels))

    @property
    def n(self) -> int:
        return len(self.assignment)

    @property
    def K(self) -> int:
        return max(self.assignment) + 1 if self.assignment else 0

    @property
    def sets(self) -> list:
        buckets = [[] for _ in range(self.K)]
        for x, k in enumerate(self.assignment):
            buckets[k].append(x)
        return [PointSet(tuple(b)) for b in buckets]

    @property
    def labels(self) -> np.ndarray:
        return np.array(self.assignment, dtype=np.intp)


@dataclass(frozen=True)
class MergeEvent:
    """One merge: sets a and b become set k; gamma is their cohesion at the time."""

    a: int
    b: int
    k: int
    gamma: float


@dataclass(frozen=True)
class MergeTree:
    """
    Dendrogram of an agglomerative run.

    Leaves carry ids 0..n-1; every merge creates the next unused id.
    `events` are the cohesive merges up to the natural stop and
    `final_sets` the surviving sets at that stop. `forced_events` holds the
    optional continuation that keeps merging the most cohesive pair until a
    single set remains.
    """

    n: int
    events: tuple
    final_ids: tuple
    final_sets: tuple
    q_trace: tuple
    forced_events: tuple = ()

    @property
    def leaves(self) -> tuple:
        return tuple(range(self.n))

    def partition(self) -> Partition:
        return Partition.from_sets(self.final_sets, self.n)


def partition_sets(G, P: Partition) -> list:
    if P.n != G.n:
        raise DomainError(f"partition covers {P.n} points, matrix has {G.n}")
    return P.sets


def modularity(G: CohesionMatrix, P: Partition) -> float:
    """
    Modularity Q: the sum of within-set cohesions.

    Args:
        G (CohesionMatrix): Cohesion measure
        P (Partition): Partition of the same points

    Returns:
        float: sum over k of gamma(S_k, S_k)
    """
    return float(sum(cohesion_sets(G, s, s) for s in partition_sets(G, P)))


def _pick_pair(C: np.ndarray, active: list, ids: list, policy: MergePolicy, threshold: float, tie: float):
    sub = C[np.ix_(active, active)]
    upper = np.triu(np.ones_like(sub, dtype=bool), k=1)
    candidates = upper & (sub > threshold)
    if not candidates.any():
        return None
    if policy is MergePolicy.GREEDY_MAX:
        # cohesions within tie of the best count as equal
        best = sub[candidates].max()
        candidates &= sub >= best - tie
    pairs = []
    for i, j in np.argwhere(candidates):
        a, b = ids[active[i]], ids[active[j]]
        pairs.append((min(a, b), max(a, b), active[i], active[j]))
    a, b, si, sj = min(pairs)
    return si, sj


def run_hierarchical(G: CohesionMatrix, policy="greedy_max", force_to_root: bool = False,
                     tolerance: Optional[float] = None) -> MergeTree:
    """
    Agglomerative clustering by merging cohesive sets.

    Starts from singletons and merges a pair with positive cohesion until no
    such pair is left (or one set remains). Set cohesions are updated with
    gamma(Sk,Sk) = gamma(Si,Si) + 2 gamma(Si,Sj) + gamma(Sj,Sj) and
    gamma(Sk,Sl) = gamma(Si,Sl) + gamma(Sj,Sl).

    Args:
        G (CohesionMatrix): Cohesion measure
        policy (str or MergePolicy): 'greedy_max' merges the most cohesive
            pair, 'first_found' the smallest id pair with positive cohesion;
            cohesions within the tolerance of each other tie, and ties go
            to the smallest id pair
        force_to_root (bool): Keep merging the most cohesive pair after the
            natural stop and record those merges as forced events
        tolerance (float, optional): Cohesions within this relative
            tolerance of zero count as zero (no merge)

    Returns:
        MergeTree: Merge events, final sets and the Q trace
    """
    policy = MergePolicy(policy)
    g = square_array(G)
    n = g.shape[0]
    threshold = Defaults.scaled_tolerance(g, tolerance)

    C = g.copy()
    ids = list(range(n))
    sets = {x: (x,) for x in range(n)}
    active = list(range(n))
    next_id = n
    q = float(np.trace(g))
    q_trace = [q]
    events, forced = [], []
    final_ids = final_sets = None

    logger.info(f"Hierarchical clustering of {n} points ({policy.value})")
    while len(active) > 1:
        natural = final_ids is None
        pick = _pick_pair(C, active, ids, policy if natural else MergePolicy.GREEDY_MAX,
                          threshold if natural else -np.inf, threshold)
        if pick is None:
            final_ids = tuple(ids[s] for s in active)
            final_sets = tuple(PointSet(sets[s]) for s in active)
            logger.info(f"Stopped after {len(events)} merges with {len(active)} sets")
            if not force_to_root:
                break
            continue
        si, sj = pick
        gamma = float(C[si, sj])
        merged_self = C[si, si] + 2.0 * C[si, sj] + C[sj, sj]
        C[si, :] += C[sj, :]
        C[:, si] = C[si, :]
        C[si, si] = merged_self
        event = MergeEvent(ids[si], ids[sj], next_id, gamma)
        sets[si] = tuple(sorted(sets[si] + sets[sj]))
        ids[si] = next_id
        next_id += 1
        active.remove(sj)
        if natural:
            events.append(event)
            q += 2.0 * gamma
            q_trace.append(q)
        else:
            forced.append(event)
        logger.debug(f"merge {event.a} {event.b} -> {event.k} gamma={gamma}")

    if final_ids is None:
        final_ids = tuple(ids[s] for s in active)
        final_sets = tuple(PointSet(sets[s]) for s in active)
    return MergeTree(n, tuple(events), final_ids, final_sets, tuple(q_trace), tuple(forced))


def format_dendrogram(tree: MergeTree) -> str:
    """
    Text dendrogram: one 'merge' line per event, then one 'final' line per set.

    Forced merges, if any, follow as 'forced' lines.
    """
    lines = [f"merge {e.a} {e.b} -> {e.k} gamma={e.gamma!r}" for e in tree.events]
    for set_id, s in zip(tree.final_ids, tree.final_sets):
        lines.append(f"final {set_id}: {' '.join(str(x) for x in s)}")
    lines.extend(f"forced {e.a} {e.b} -> {e.k} gamma={e.gamma!r}" for e in tree.forced_events)
    return '\n'.join(lines) + '\n'
