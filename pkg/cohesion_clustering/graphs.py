# -*- coding: utf-8 -*-

"""
Graphs Module
Simple undirected graphs and the distance matrices derived from them
"""

from __future__ import annotations

import logging
from typing import Iterable, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from .errors import DisconnectedGraphError, DomainError, GraphInputError
from .metric_core import DistanceMatrix

logger = logging.getLogger(__name__)

DISCONNECTED_POLICIES = ('error', 'cap')


def make_graph(n: int, edges: Iterable[Tuple[int, int]]) -> nx.Graph:
    """
    Build a simple undirected graph on nodes 0..n-1.

    Args:
        n (int): Node count
        edges: Iterable of (u, v) pairs

    Returns:
        networkx.Graph: The graph; duplicate edges are collapsed

    Raises:
        GraphInputError: On self-loops or nodes outside [0, n)
    """
    g = nx.Graph()
    g.add_nodes_from(range(n))
    duplicates = 0
    for u, v in edges:
        u, v = int(u), int(v)
        if u == v:
            raise GraphInputError(f"self-loop at node {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphInputError(f"edge ({u}, {v}) outside [0, {n})")
        if g.has_edge(u, v):
            duplicates += 1
            continue
        g.add_edge(u, v)
    if duplicates:
        logger.warning(f"Collapsed {duplicates} duplicate edges")
    return g


def check_simple(g: nx.Graph) -> int:
    """Return the node count of g after checking nodes are 0..n-1 and there are no self-loops."""
    n = g.number_of_nodes()
    if set(g.nodes) != set(range(n)):
        raise GraphInputError("graph nodes must be the integers 0..n-1")
    if nx.number_of_selfloops(g):
        raise GraphInputError("graph has self-loops")
    return n


def adjacency_matrix(g: nx.Graph) -> np.ndarray:
    n = check_simple(g)
    return nx.to_numpy_array(g, nodelist=range(n), weight=None)


def components(g: nx.Graph) -> list:
    """Connected components as sorted node lists, ordered by smallest node."""
    return sorted((sorted(c) for c in nx.connected_components(g)), key=lambda c: c[0])


def _split(g: nx.Graph, disconnected: str) -> list:
    if disconnected not in DISCONNECTED_POLICIES:
        raise DomainError(f"unknown disconnected policy: {disconnected}")
    parts = components(g)
    if len(parts) > 1:
        if disconnected == 'error':
            raise DisconnectedGraphError(parts[0][0], parts[1][0])
        logger.warning(
            f"Graph has {len(parts)} components; cross-component distances capped at {g.number_of_nodes()}")
    return parts


def geodesic_distance(g: nx.Graph, disconnected: str = 'error') -> DistanceMatrix:
    """
    Hop-count distance between every pair of nodes.

    Args:
        g (networkx.Graph): Simple graph on nodes 0..n-1
        disconnected (str): 'error' to refuse disconnected graphs, 'cap' to
            set every cross-component distance to n

    Returns:
        DistanceMatrix: Shortest-path hop counts

    Raises:
        DisconnectedGraphError: If g is disconnected and the policy is 'error'
    """
    n = check_simple(g)
    _split(g, disconnected)
    d = np.full((n, n), float(n))
    for source, lengths in nx.all_pairs_shortest_path_length(g):
        for target, hops in lengths.items():
            d[source, target] = hops
    logger.debug(f"Geodesic distances computed for {n} nodes")
    return DistanceMatrix(d)


def _component_resistance(laplacian: np.ndarray) -> np.ndarray:
    # pseudo-inverse of a connected Laplacian: (L + J/n)^-1 - J/n
    m = laplacian.shape[0]
    shift = np.full((m, m), 1.0 / m)
    pinv = np.linalg.solve(laplacian + shift, np.eye(m)) - shift
    diag = np.diag(pinv)
    r = diag[:, None] + diag[None, :] - pinv - pinv.T
    r = (r + r.T) / 2.0
    np.fill_diagonal(r, 0.0)
    return np.clip(r, 0.0, None)


def resistance_distance(g: nx.Graph, disconnected: str = 'error') -> DistanceMatrix:
    """
    Effective resistance between every pair of nodes, one unit resistor per edge.

    The Laplacian pseudo-inverse is obtained by a dense linear solve.

    Args:
        g (networkx.Graph): Simple graph on nodes 0..n-1
        disconnected (str): 'error' or 'cap' as for geodesic_distance

    Returns:
        DistanceMatrix: Resistance distances
    """
    n = check_simple(g)
    parts = _split(g, disconnected)
    a = adjacency_matrix(g)
    d = np.full((n, n), float(n))
    for part in parts:
        idx = np.array(part, dtype=np.intp)
        sub = a[np.ix_(idx, idx)]
        laplacian = np.diag(sub.sum(axis=1)) - sub
        d[np.ix_(idx, idx)] = _component_resistance(laplacian)
    logger.debug(f"Resistance distances computed for {n} nodes")
    return DistanceMatrix(d)


def epsilon_graph(points, eps: float) -> nx.Graph:
    """
    Connect every pair of points closer than eps (Euclidean, strict).

    Args:
        points: (n, dim) coordinates
        eps (float): Positive radius

    Returns:
        networkx.Graph: The epsilon-neighbourhood graph
    """
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps}")
    dist = DistanceMatrix.from_points(points).values
    n = dist.shape[0]
    close = np.triu(dist < eps, k=1)
    g = make_graph(n, map(tuple, np.argwhere(close)))
    logger.info(f"Epsilon graph with eps={eps}: {n} nodes, {g.number_of_edges()} edges")
    return g


def largest_component(g: nx.Graph, labels: Optional[Sequence[int]] = None):
    """
    Restrict a graph to its largest connected component.

    Nodes are re-indexed by order-preserving compaction.

    Args:
        g (networkx.Graph): Simple graph on nodes 0..n-1
        labels (sequence, optional): Per-node labels to restrict alongside

    Returns:
        tuple: (graph, labels or None, kept original node ids)
    """
    check_simple(g)
    if not g.number_of_nodes():
        return g, labels, []
    keep = max(components(g), key=len)
    index = {old: new for new, old in enumerate(keep)}
    sub = make_graph(len(keep), ((index[u], index[v]) for u, v in g.subgraph(keep).edges))
    kept_labels = None if labels is None else [labels[v] for v in keep]
    return sub, kept_labels, keep
