# -*- coding: utf-8 -*-

"""
Evaluation Module
Partition quality against ground truth
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from sklearn.metrics.cluster import contingency_matrix, normalized_mutual_info_score

from .errors import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ContingencyTable:
    """Co-occurrence counts of two labelings; rows follow `a`, columns follow `b`."""

    counts: np.ndarray

    @property
    def row_marginals(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def column_marginals(self) -> np.ndarray:
        return self.counts.sum(axis=0)

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def _check_lengths(a: Sequence[int], b: Sequence[int]):
    if len(a) != len(b):
        raise DomainError(f"labelings differ in length: {len(a)} vs {len(b)}")


def contingency_table(a: Sequence[int], b: Sequence[int]) -> ContingencyTable:
    _check_lengths(a, b)
    return ContingencyTable(np.asarray(contingency_matrix(a, b)))


def nmi(a: Sequence[int], b: Sequence[int]) -> float:
    """
    Normalized mutual information of two labelings.

    Uses natural-log entropies and the geometric-mean normalisation
    I(A;B) / sqrt(H(A) H(B)). Two single-cluster labelings score 1; a
    zero-entropy labeling against any other scores 0.

    Args:
        a (sequence): First labeling
        b (sequence): Second labeling

    Returns:
        float: NMI in [0, 1]

    Raises:
        DomainError: If the labelings differ in length
    """
    _check_lengths(a, b)
    score = float(normalized_mutual_info_score(a, b, average_method='geometric'))
    return min(max(score, 0.0), 1.0)
