# -*- coding: utf-8 -*-

"""
Metric Core Module
Distance matrices, point sets, metric validation and average/relative distances
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Union

import numpy as np

from .config import Defaults
from .errors import AxiomError, DomainError, ShapeError

logger = logging.getLogger(__name__)


def square_array(values) -> np.ndarray:
    """
    Convert a matrix-like value into a float64 square array.

    Args:
        values: DistanceMatrix, CohesionMatrix, nested lists or ndarray

    Returns:
        numpy.ndarray: A 2-D float64 array

    Raises:
        ShapeError: If the value is not a square matrix
    """
    if hasattr(values, 'values') and isinstance(getattr(values, 'values'), np.ndarray):
        values = values.values
    arr = np.array(values, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class PointSet:
    """
    Ordered set of point indices.

    Members are stored sorted ascending so that every iteration over a set is
    deterministic.
    """

    members: tuple = ()

    def __post_init__(self):
        ordered = tuple(sorted(int(x) for x in self.members))
        if any(x < 0 for x in ordered):
            raise DomainError(f"negative point index in {ordered}")
        if len(set(ordered)) != len(ordered):
            raise DomainError(f"duplicate point index in {ordered}")
        object.__setattr__(self, 'members', ordered)

    @classmethod
    def of(cls, points: Union["PointSet", Iterable[int]]) -> "PointSet":
        return points if isinstance(points, cls) else cls(tuple(points))

    @classmethod
    def full(cls, n: int) -> "PointSet":
        return cls(tuple(range(n)))

    @property
    def indices(self) -> np.ndarray:
        return np.array(self.members, dtype=np.intp)

    def complement(self, n: int) -> "PointSet":
        mine = set(self.members)
        return PointSet(tuple(x for x in range(n) if x not in mine))

    def union(self, other: "PointSet") -> "PointSet":
        return PointSet(tuple(set(self.members) | set(PointSet.of(other).members)))

    def isdisjoint(self, other: "PointSet") -> bool:
        return set(self.members).isdisjoint(PointSet.of(other).members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x):
        return x in self.members


@dataclass(frozen=True)
class Violation:
    """Worst witness of one violated axiom."""

    axiom: str
    witness: tuple
    slack: float
    count: int

    def as_dict(self) -> dict:
        return {
            'axiom': self.axiom,
            'witness': list(self.witness),
            'slack': self.slack,
            'count': self.count,
        }


@dataclass(frozen=True)
class ValidationReport:
    """
    Result of an axiom check.

    Args:
        kind (str): 'metric' or 'cohesion'
        n (int): Point count
        tolerance (float): Absolute tolerance used for every comparison
        violations (tuple): One Violation per failed axiom, in axiom order
    """

    kind: str
    n: int
    tolerance: float
    violations: tuple = ()

    @property
    def passed(self) -> bool:
        return not self.violations

    def failed_axioms(self) -> list:
        return [v.axiom for v in self.violations]

    def violation(self, axiom: str) -> Optional[Violation]:
        return next((v for v in self.violations if v.axiom == axiom), None)

    def as_dict(self) -> dict:
        return {
            'kind': self.kind,
            'n': self.n,
            'tolerance': self.tolerance,
            'passed': self.passed,
            'violations': [v.as_dict() for v in self.violations],
        }


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """
    Dense n x n distance matrix.

    The array is copied and frozen on construction. Only squareness is
    enforced here; the axioms D1-D4 are checked on demand by validate_metric,
    and the algorithm guarantees (nonnegative triangular distance,
    convergence) hold only for matrices that pass it.
    """

    values: np.ndarray
    metric_checked: bool = False
    _row_means: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        arr = square_array(self.values)
        arr.setflags(write=False)
        object.__setattr__(self, 'values', arr)
        means = arr.mean(axis=1) if arr.size else np.zeros(0)
        means.setflags(write=False)
        object.__setattr__(self, '_row_means', means)

    @classmethod
    def from_points(cls, points) -> "DistanceMatrix":
        """
        Euclidean distance matrix of a point cloud.

        Args:
            points: (n, dim) coordinates

        Returns:
            DistanceMatrix: Pairwise Euclidean distances
        """
        pts = np.asarray(points, dtype=np.float64)
        if pts.ndim != 2:
            raise DomainError(f"points must be a 2-D array, got shape {pts.shape}")
        diff = pts[:, None, :] - pts[None, :, :]
        return cls(np.sqrt((diff ** 2).sum(axis=-1)))

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def row_means(self) -> np.ndarray:
        """dbar({x}, Omega) for every point x."""
        return self._row_means

    @property
    def grand_mean(self) -> float:
        """dbar(Omega, Omega)."""
        return float(self.values.mean()) if self.n else 0.0

    def checked(self, tolerance: Optional[float] = None) -> "DistanceMatrix":
        """
        Validate the matrix and return a copy flagged as a metric.

        Raises:
            AxiomError: If any of D1-D4 fails
        """
        report = validate_metric(self, tolerance)
        if not report.passed:
            raise AxiomError(f"not a metric: fails {', '.join(report.failed_axioms())}", report)
        return replace(self, metric_checked=True)


def members(S, n: int) -> np.ndarray:
    """
    Index array of a nonempty point set inside [0, n).

    Raises:
        DomainError: If the set is empty or reaches outside [0, n)
    """
    ps = PointSet.of(S)
    if not len(ps):
        raise DomainError("point set must be nonempty")
    if ps.members[-1] >= n:
        raise DomainError(f"point {ps.members[-1]} outside [0, {n})")
    return ps.indices


def check_point(x: int, n: int) -> int:
    if not 0 <= int(x) < n:
        raise DomainError(f"point {x} outside [0, {n})")
    return int(x)


def _pair_witness(mask: np.ndarray, slack: np.ndarray, axiom: str) -> Optional[Violation]:
    if not mask.any():
        return None
    masked = np.where(mask, slack, np.inf)
    x, y = np.unravel_index(int(np.argmin(masked)), masked.shape)
    return Violation(axiom, (int(x), int(y)), float(slack[x, y]), int(mask.sum()))


def _triangle_witness(d: np.ndarray, tol: float) -> Optional[Violation]:
    # slack[y, z] for a fixed x is d(x,z) + d(z,y) - d(x,y)
    worst, witness, count = np.inf, None, 0
    for x in range(d.shape[0]):
        slack = d[x][None, :] + d.T - d[x][:, None]
        bad = slack < -tol
        if bad.any():
            count += int(bad.sum())
            y, z = np.unravel_index(int(np.argmin(slack)), slack.shape)
            if slack[y, z] < worst:
                worst, witness = float(slack[y, z]), (x, int(y), int(z))
    if witness is None:
        return None
    return Violation('D4', witness, worst, count)


def validate_metric(D, tolerance: Optional[float] = None) -> ValidationReport:
    """
    Check the distance axioms D1-D4.

    Each violated axiom is reported once with its worst witness (pair for
    D1-D3, triple (x, y, z) for the triangle inequality d(x,y) <= d(x,z) + d(z,y)).

    Args:
        D: DistanceMatrix or square matrix-like
        tolerance (float, optional): Relative tolerance, scaled by max |d|

    Returns:
        ValidationReport: The report; passed is True iff no axiom fails

    Raises:
        ShapeError: If the matrix is not square
    """
    d = square_array(D)
    n = d.shape[0]
    tol = Defaults.scaled_tolerance(d, tolerance)

    found = [
        _pair_witness(d < -tol, d, 'D1'),
        _pair_witness(np.diag(np.abs(np.diag(d)) > tol), -np.abs(np.diag(np.diag(d))), 'D2'),
        _pair_witness(np.triu(np.abs(d - d.T) > tol, k=1), -np.abs(d - d.T), 'D3'),
        _triangle_witness(d, tol),
    ]
    report = ValidationReport('metric', n, tol, tuple(v for v in found if v is not None))
    if report.passed:
        logger.debug(f"Metric check passed on {n} points")
    else:
        logger.info(f"Metric check failed on {n} points: {', '.join(report.failed_axioms())}")
    return report


def avg_distance(D: DistanceMatrix, S1, S2) -> float:
    """
    Average distance between a random point of S1 and a random point of S2.

    Args:
        D (DistanceMatrix): Distances
        S1: First nonempty point set
        S2: Second nonempty point set

    Returns:
        float: (1/(|S1||S2|)) sum over x in S1, y in S2 of d(x,y)
    """
    a, b = members(S1, D.n), members(S2, D.n)
    return float(D.values[np.ix_(a, b)].mean())


def rel_distance_point(D: DistanceMatrix, x: int, y: int) -> float:
    """Relative distance RC(x||y) = d(x,y) - dbar({x}, Omega); may be negative."""
    x, y = check_point(x, D.n), check_point(y, D.n)
    return float(D.values[x, y] - D.row_means[x])


def rel_distance_to_point(D: DistanceMatrix, y: int) -> float:
    """Average relative distance from a random point to y: dbar(Omega,{y}) - dbar(Omega,Omega)."""
    y = check_point(y, D.n)
    return float(D.values[:, y].mean() - D.grand_mean)


def rel_distance_sets(D: DistanceMatrix, S1, S2) -> float:
    """
    Relative distance RC(S1||S2) = dbar(S1,S2) - dbar(S1,Omega).

    Args:
        D (DistanceMatrix): Distances
        S1: Source set
        S2: Target set

    Returns:
        float: The relative distance from S1 to S2
    """
    a, b = members(S1, D.n), members(S2, D.n)
    return float(D.values[np.ix_(a, b)].mean() - D.values[a].mean())
