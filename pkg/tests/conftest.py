# -*- coding: utf-8 -*-

"""Shared fixtures: small golden matrices, a seeded metric pool and the karate club."""

import networkx as nx
import numpy as np
import pytest

from cohesion_clustering.cohesion import CohesionMatrix
from cohesion_clustering.graphs import geodesic_distance, make_graph
from cohesion_clustering.metric_core import DistanceMatrix

LINE_COORDINATES = (0.0, 1.0, 2.0, 4.0)

# cohesion matrix that is not positive semi-definite
EXAMPLE_NOT_PSD = [
    [0.44, 0.04, 0.04, 0.04, -0.56],
    [0.04, 0.64, -0.36, -0.36, 0.04],
    [0.04, -0.36, 0.64, -0.36, 0.04],
    [0.04, -0.36, -0.36, 0.64, 0.04],
    [-0.56, 0.04, 0.04, 0.04, 0.44],
]

# positive semi-definite, zero row sums, yet not a cohesion matrix
EXAMPLE_NOT_COHESION = [
    [0.375, -0.025, -0.325, -0.025],
    [-0.025, 0.875, -0.025, -0.825],
    [-0.325, -0.025, 0.375, -0.025],
    [-0.025, -0.825, -0.025, 0.875],
]


def line_metric(coordinates=LINE_COORDINATES) -> DistanceMatrix:
    x = np.asarray(coordinates, dtype=float)
    return DistanceMatrix(np.abs(x[:, None] - x[None, :]))


def metric_pool(count=40, seed=7):
    """Seeded Euclidean clouds and connected-graph geodesics, n in 3..12."""
    rng = np.random.default_rng(seed)
    pool = []
    for i in range(count):
        n = int(rng.integers(3, 13))
        if i % 2 == 0:
            dim = int(rng.integers(1, 4))
            pool.append(DistanceMatrix.from_points(rng.normal(size=(n, dim)) * 10))
        else:
            g = nx.connected_watts_strogatz_graph(n, 2, 0.3, seed=int(rng.integers(1 << 31)))
            pool.append(geodesic_distance(g))
    return pool


def random_symmetric(n, rng) -> DistanceMatrix:
    """Symmetric, zero diagonal, not necessarily a metric."""
    a = rng.uniform(0.0, 10.0, size=(n, n))
    a = np.triu(a, k=1)
    return DistanceMatrix(a + a.T)


@pytest.fixture
def L4():
    return line_metric()


@pytest.fixture
def gamma_not_psd():
    return CohesionMatrix(np.array(EXAMPLE_NOT_PSD))


@pytest.fixture
def m_not_cohesion():
    return np.array(EXAMPLE_NOT_COHESION)


@pytest.fixture(scope="session")
def pool():
    return metric_pool()


@pytest.fixture(scope="session")
def karate():
    g = nx.karate_club_graph()
    return make_graph(g.number_of_nodes(), g.edges)


@pytest.fixture
def karate_edges(tmp_path, karate):
    path = tmp_path / "karate.txt"
    lines = ["# Zachary karate club, 0-based"]
    lines += [f"{u} {v}" for u, v in sorted(karate.edges)]
    path.write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture
def L4_file(tmp_path, L4):
    path = tmp_path / "l4.csv"
    path.write_text("".join(",".join(repr(float(v)) for v in row) + "\n" for row in L4.values))
    return path
