# -*- coding: utf-8 -*-

"""
Data Generation Module
Seeded synthetic datasets: two concentric rings and the stochastic block model
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

import networkx as nx
import numpy as np

from .config import Defaults
from .errors import DomainError
from .graphs import make_graph

logger = logging.getLogger(__name__)


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator; the same seed gives the same stream on every platform."""
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """
    Synthetic data with ground-truth labels.

    Ring data carries `points` (n x 2); block-model data carries `graph`
    and `node_ids`, the generator's node index of every kept node.
    """

    labels: tuple
    seed: int
    points: Optional[np.ndarray] = None
    graph: Optional[nx.Graph] = None
    node_ids: Optional[tuple] = None

    @property
    def size(self) -> int:
        return len(self.labels)


def _check_interval(name: str, interval) -> Tuple[float, float]:
    low, high = (float(v) for v in interval)
    if low > high:
        raise DomainError(f"{name} radius interval [{low}, {high}] is empty")
    if low < 0:
        raise DomainError(f"{name} radius interval [{low}, {high}] must be nonnegative")
    return low, high


def gen_two_rings(n_outer: int = Defaults.RING_OUTER_COUNT,
                  n_inner: int = Defaults.RING_INNER_COUNT,
                  r_outer=Defaults.RING_OUTER_RADIUS,
                  r_inner=Defaults.RING_INNER_RADIUS,
                  seed: int = Defaults.SEED) -> LabeledDataset:
    """
    Two concentric noisy rings in the plane.

    Each point sits at (r cos phi, r sin phi) with r uniform in its ring's
    interval and phi uniform in [0, 2 pi).

    Args:
        n_outer (int): Points in the outer ring (label 0)
        n_inner (int): Points in the inner ring (label 1)
        r_outer (tuple): Outer radius interval
        r_inner (tuple): Inner radius interval
        seed (int): Generator seed

    Returns:
        LabeledDataset: Outer ring points first, then inner ring points
    """
    if n_outer <= 0 or n_inner <= 0:
        raise DomainError(f"ring sizes must be positive, got {n_outer} and {n_inner}")
    rings = ((n_outer, _check_interval('outer', r_outer)), (n_inner, _check_interval('inner', r_inner)))
    rng = make_rng(seed)
    chunks = []
    for count, (low, high) in rings:
        radius = rng.uniform(low, high, size=count)
        angle = rng.uniform(0.0, 2.0 * math.pi, size=count)
        chunks.append(np.column_stack((radius * np.cos(angle), radius * np.sin(angle))))
    points = np.vstack(chunks)
    labels = (0,) * n_outer + (1,) * n_inner
    logger.info(f"Generated two rings: {n_outer} outer, {n_inner} inner points (seed {seed})")
    return LabeledDataset(labels=labels, seed=seed, points=points)


def sbm_threshold(q: int, mean_degree: float) -> float:
    """Detectability threshold for |c_in - c_out|: q * sqrt(mean degree)."""
    if mean_degree < 0:
        raise DomainError(f"mean degree must be nonnegative, got {mean_degree}")
    return q * math.sqrt(mean_degree)


def sbm_rates(q: int, mean_degree: float, delta: float) -> Tuple[float, float]:
    """
    Solve c_in and c_out from the mean degree and their difference.

    Uses c_in + (q - 1) c_out = q * mean_degree and c_in - c_out = delta.

    Returns:
        tuple: (c_in, c_out)
    """
    c_out = mean_degree - delta / q
    c_in = c_out + delta
    if c_out < 0:
        raise DomainError(f"delta={delta} is too large for mean degree {mean_degree} with q={q}")
    return c_in, c_out


def gen_sbm(n: int = Defaults.SBM_NODES, q: int = Defaults.SBM_BLOCKS,
            c_in: Optional[float] = None, c_out: Optional[float] = None,
            seed: int = Defaults.SEED) -> LabeledDataset:
    """
    Planted-partition stochastic block model.

    n nodes are split evenly into q blocks; a pair inside a block is an edge
    with probability c_in/n and a pair across blocks with probability c_out/n.
    Isolated vertices are dropped and the rest re-indexed in order.

    Args:
        n (int): Node count, divisible by q
        q (int): Block count
        c_in (float, optional): n times the within-block edge probability;
            with c_out, defaults to the rates for the default mean degree and delta
        c_out (float, optional): n times the cross-block edge probability
        seed (int): Generator seed

    Returns:
        LabeledDataset: Graph, block labels and original node ids
    """
    if q <= 0 or n <= 0 or n % q:
        raise DomainError(f"q={q} must divide n={n}")
    if c_in is None or c_out is None:
        c_in, c_out = sbm_rates(q, Defaults.SBM_MEAN_DEGREE, Defaults.SBM_DELTA)
    p_in, p_out = c_in / n, c_out / n
    for name, p in (('within-block', p_in), ('cross-block', p_out)):
        if not 0.0 <= p <= 1.0:
            raise DomainError(f"{name} probability {p} outside [0, 1]")

    rng = make_rng(seed)
    blocks = np.repeat(np.arange(q), n // q)
    prob = np.where(blocks[:, None] == blocks[None, :], p_in, p_out)
    adjacency = np.triu(rng.random((n, n)) < prob, k=1)
    edges = np.argwhere(adjacency)

    degree = np.bincount(edges.ravel(), minlength=n)
    kept = np.flatnonzero(degree > 0)
    index = np.full(n, -1)
    index[kept] = np.arange(kept.size)
    graph = make_graph(kept.size, ((index[u], index[v]) for u, v in edges))
    labels = tuple(int(blocks[v]) for v in kept)
    logger.info(f"Generated SBM: {kept.size} of {n} nodes kept, {len(edges)} edges (seed {seed})")
    return LabeledDataset(labels=labels, seed=seed, graph=graph, node_ids=tuple(int(v) for v in kept))


def sbm_sweep(n: int = Defaults.SBM_NODES, q: int = Defaults.SBM_BLOCKS,
              mean_degree: float = Defaults.SBM_MEAN_DEGREE,
              start: float = Defaults.SBM_SWEEP_START, stop: float = Defaults.SBM_SWEEP_STOP,
              step: float = Defaults.SBM_SWEEP_STEP,
              graphs_per_setting: int = Defaults.SBM_GRAPHS_PER_SETTING,
              seed: int = Defaults.SEED) -> Iterator[Tuple[float, int, LabeledDataset]]:
    """
    Lazily generate block-model graphs over a grid of c_in - c_out values.

    Graph j of every setting uses seed + j.

    Yields:
        tuple: (delta, seed, dataset)
    """
    count = int(round((stop - start) / step)) + 1
    for i in range(count):
        delta = round(start + i * step, 10)
        c_in, c_out = sbm_rates(q, mean_degree, delta)
        for j in range(graphs_per_setting):
            yield delta, seed + j, gen_sbm(n, q, c_in, c_out, seed + j)
