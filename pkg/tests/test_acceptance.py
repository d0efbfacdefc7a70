# -*- coding: utf-8 -*-

"""End-to-end runs on the synthetic benchmarks."""

import numpy as np
import pytest

from cohesion_clustering.config import Defaults
from cohesion_clustering.datagen import gen_sbm, gen_two_rings, sbm_rates
from cohesion_clustering.evaluation import nmi
from cohesion_clustering.graphs import epsilon_graph, geodesic_distance, largest_component, resistance_distance
from cohesion_clustering.ksets import run_ksets

pytestmark = pytest.mark.slow


def test_two_rings_are_recovered():
    perfect = 0
    for seed in range(20):
        data = gen_two_rings(seed=seed)
        g = epsilon_graph(data.points, Defaults.RING_EPSILON)
        run = run_ksets(geodesic_distance(g, disconnected='cap'), 2, seed=seed)
        perfect += nmi(run.final.assignment, data.labels) == pytest.approx(1.0)
    assert perfect >= 19


def _sbm_scores(delta, seeds=range(10)):
    c_in, c_out = sbm_rates(2, Defaults.SBM_MEAN_DEGREE, delta)
    scores = []
    for seed in seeds:
        data = gen_sbm(Defaults.SBM_NODES, 2, c_in, c_out, seed=seed)
        g, labels, _ = largest_component(data.graph, data.labels)
        run = run_ksets(resistance_distance(g), 2, seed=seed)
        scores.append(nmi(run.final.assignment, labels))
    return np.array(scores)


def test_block_model_above_threshold():
    assert _sbm_scores(5.9).mean() >= 0.8


def test_block_model_below_threshold():
    assert _sbm_scores(2.5).mean() <= 0.2
