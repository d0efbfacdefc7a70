# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest

from cohesion_clustering.errors import DomainError
from cohesion_clustering.evaluation import contingency_table, nmi


def test_identical_and_permuted_labelings():
    assert nmi([0, 0, 1, 1], [0, 0, 1, 1]) == pytest.approx(1.0)
    assert nmi([0, 0, 1, 1], [1, 1, 0, 0]) == pytest.approx(1.0)


def test_independent_labelings():
    assert nmi([0, 0, 1, 1], [0, 1, 0, 1]) == pytest.approx(0.0, abs=1e-12)


def test_geometric_normalisation():
    a, b = [0, 0, 0, 1, 1, 1], [0, 0, 1, 1, 2, 2]
    joint = np.array([[2, 1, 0], [0, 1, 2]]) / 6
    pa, pb = joint.sum(axis=1), joint.sum(axis=0)
    mi = sum(p * math.log(p / (pa[i] * pb[j])) for (i, j), p in np.ndenumerate(joint) if p > 0)
    ha = -sum(p * math.log(p) for p in pa)
    hb = -sum(p * math.log(p) for p in pb)
    assert nmi(a, b) == pytest.approx(mi / math.sqrt(ha * hb))


def test_single_cluster_conventions():
    assert nmi([0, 0, 0], [0, 0, 0]) == pytest.approx(1.0)
    assert nmi([0, 0, 0], [0, 1, 2]) == pytest.approx(0.0)


def test_length_mismatch():
    with pytest.raises(DomainError):
        nmi([0, 1], [0])


def test_contingency_table():
    table = contingency_table([0, 0, 1], [1, 1, 0])
    np.testing.assert_array_equal(table.counts, [[0, 2], [1, 0]])
    assert table.total == 3
    np.testing.assert_array_equal(table.row_marginals, [2, 1])
