# -*- coding: utf-8 -*-

"""
Cohesion Module
Cohesion measures, the cluster predicate, cohesion axioms and the
distance/cohesion duality
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, replace
from typing import Optional, Union

import networkx as nx
import numpy as np

from .config import Defaults
from .errors import AxiomError, ConstructionError, DomainError, GraphInputError
from .metric_core import (
    DistanceMatrix,
    PointSet,
    ValidationReport,
    Violation,
    avg_distance,
    members,
    rel_distance_sets,
    square_array,
)

logger = logging.getLogger(__name__)

STATEMENT_LABELS = ('i', 'ii', 'iii', 'iv', 'v', 'vi', 'vii', 'viii', 'ix', 'x')


@dataclass(frozen=True, eq=False)
class CohesionMatrix:
    """
    Dense n x n cohesion matrix.

    Squareness is the only structural requirement; the axioms C1-C3 are
    checked on demand by validate_cohesion.
    """

    values: np.ndarray
    cohesion_checked: bool = False

    def __post_init__(self):
        arr = square_array(self.values)
        arr.setflags(write=False)
        object.__setattr__(self, 'values', arr)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def checked(self, tolerance: Optional[float] = None) -> "CohesionMatrix":
        """
        Validate the matrix and return a copy flagged as a cohesion measure.

        Raises:
            AxiomError: If any of C1-C3 fails
        """
        report = validate_cohesion(self, tolerance)
        if not report.passed:
            raise AxiomError(f"not a cohesion measure: fails {', '.join(report.failed_axioms())}", report)
        return replace(self, cohesion_checked=True)


@dataclass(frozen=True)
class ClusterReport:
    """
    The ten equivalent cluster statements evaluated for one set.

    Args:
        statements (tuple): Ten booleans, statements (i) through (x)
        values (tuple): The ten underlying quantities, each expressed so that
            the statement reads "value >= 0"
        is_cluster (bool): Statement (i), gamma(S,S) >= 0
    """

    statements: tuple
    values: tuple
    is_cluster: bool

    @property
    def unanimous(self) -> bool:
        return len(set(self.statements)) == 1

    def as_dict(self) -> dict:
        return {
            'is_cluster': self.is_cluster,
            'unanimous': self.unanimous,
            'statements': {label: {'holds': ok, 'value': v}
                           for label, ok, v in zip(STATEMENT_LABELS, self.statements, self.values)},
        }


def cohesion_point(D: DistanceMatrix, x: int, y: int) -> float:
    """
    Cohesion between two points.

    Args:
        D (DistanceMatrix): Distances
        x (int): First point
        y (int): Second point

    Returns:
        float: dbar(Omega,{y}) + dbar({x},Omega) - dbar(Omega,Omega) - d(x,y)
    """
    if not (0 <= x < D.n and 0 <= y < D.n):
        raise DomainError(f"points ({x}, {y}) outside [0, {D.n})")
    d = D.values
    return float(d[:, y].mean() + D.row_means[x] - D.grand_mean - d[x, y])


def cohesion_matrix(D: DistanceMatrix) -> CohesionMatrix:
    """
    Dual cohesion measure of a distance matrix (double centering with a sign flip).

    Args:
        D (DistanceMatrix): Distances

    Returns:
        CohesionMatrix: gamma(x, y) for every pair
    """
    d = D.values
    if not d.size:
        return CohesionMatrix(np.zeros((0, 0)))
    g = d.mean(axis=0)[None, :] + D.row_means[:, None] - D.grand_mean - d
    return CohesionMatrix(g)


def dual_distance(G: CohesionMatrix, check: bool = False,
                  tolerance: Optional[float] = None) -> DistanceMatrix:
    """
    Dual distance measure of a cohesion matrix.

    Args:
        G (CohesionMatrix): Cohesion measure
        check (bool): Validate C1-C3 first
        tolerance (float, optional): Relative tolerance for the check

    Returns:
        DistanceMatrix: d(x,y) = (g(x,x) + g(y,y))/2 - g(x,y)

    Raises:
        AxiomError: If check is set and G is not a cohesion measure
    """
    g = square_array(G)
    if check:
        report = validate_cohesion(g, tolerance)
        if not report.passed:
            raise AxiomError(f"not a cohesion measure: fails {', '.join(report.failed_axioms())}", report)
    diag = np.diag(g)
    d = (diag[:, None] + diag[None, :]) / 2.0 - g
    np.fill_diagonal(d, 0.0)
    return DistanceMatrix(d)


def cohesion_sets(G: CohesionMatrix, S1, S2) -> float:
    """Cohesion between two sets: the sum of gamma over all pairs in S1 x S2."""
    a, b = members(S1, G.n), members(S2, G.n)
    return float(G.values[np.ix_(a, b)].sum())


def is_cluster(G: CohesionMatrix, S, tolerance: Optional[float] = None) -> bool:
    """
    Cluster predicate: S is cohesive to itself.

    Args:
        G (CohesionMatrix): Cohesion measure
        S: Nonempty point set
        tolerance (float, optional): Relative tolerance, scaled by max |g|

    Returns:
        bool: True iff gamma(S,S) >= -tolerance
    """
    tol = Defaults.scaled_tolerance(G.values, tolerance)
    return cohesion_sets(G, S, S) >= -tol


def theorem1_statements(D: DistanceMatrix, S, tolerance: Optional[float] = None) -> ClusterReport:
    """
    Evaluate the ten equivalent characterisations of a cluster.

    Every quantity is a positive multiple of gamma(S,S) when D is symmetric.
    Each one is classified after dividing by that multiple, against one
    signed tolerance, so that values at exactly zero cannot split the vote.

    Args:
        D (DistanceMatrix): Distances (symmetric; the triangle inequality is not needed)
        S: Proper nonempty subset of the points
        tolerance (float, optional): Relative tolerance

    Returns:
        ClusterReport: Booleans and values of statements (i)-(x)

    Raises:
        DomainError: If S is empty or S is the whole point set
    """
    n = D.n
    S = PointSet.of(S)
    members(S, n)
    Sc = S.complement(n)
    if not len(Sc):
        raise DomainError("the set must be a proper subset: its complement is empty")
    omega = PointSet.full(n)
    G = cohesion_matrix(D)
    s, c = len(S), len(Sc)

    g_ss = cohesion_sets(G, S, S)
    g_scsc = cohesion_sets(G, Sc, Sc)
    g_ssc = cohesion_sets(G, S, Sc)
    d_ss, d_scsc, d_ssc = avg_distance(D, S, S), avg_distance(D, Sc, Sc), avg_distance(D, S, Sc)

    values = (
        g_ss,
        g_scsc,
        -g_ssc,
        g_ss - g_ssc,
        2 * avg_distance(D, S, omega) - avg_distance(D, omega, omega) - d_ss,
        rel_distance_sets(D, omega, S) - rel_distance_sets(D, S, S),
        rel_distance_sets(D, Sc, S) - rel_distance_sets(D, S, S),
        2 * d_ssc - d_ss - d_scsc,
        rel_distance_sets(D, S, Sc) - rel_distance_sets(D, omega, Sc),
        rel_distance_sets(D, Sc, S) - rel_distance_sets(D, omega, S),
    )
    weights = (
        1.0, 1.0, 1.0, 2.0,
        1.0 / s ** 2,
        1.0 / s ** 2,
        n / (s ** 2 * c),
        n ** 2 / (s ** 2 * c ** 2),
        1.0 / (s * c),
        1.0 / (s * c),
    )
    tol = Defaults.scaled_tolerance(D.values, tolerance) * n * n
    statements = tuple(bool(v / w >= -tol) for v, w in zip(values, weights))
    report = ClusterReport(statements, tuple(float(v) for v in values), statements[0])
    if not report.unanimous:
        logger.warning(f"Cluster statements disagree for {S.members}: {statements}")
    return report


def validate_cohesion(G, tolerance: Optional[float] = None) -> ValidationReport:
    """
    Check the cohesion axioms.

    C1 symmetry, C2 zero row sums and C3
    g(x,x) + g(y,z) - g(x,z) - g(x,y) >= 0 for all triples (x, y, z).

    Args:
        G: CohesionMatrix or square matrix-like
        tolerance (float, optional): Relative tolerance, scaled by max |g|

    Returns:
        ValidationReport: Worst witness per violated axiom

    Raises:
        ShapeError: If the matrix is not square
    """
    g = square_array(G)
    n = g.shape[0]
    tol = Defaults.scaled_tolerance(g, tolerance)
    violations = []

    asym = np.triu(np.abs(g - g.T) > tol, k=1)
    if asym.any():
        slack = np.where(asym, -np.abs(g - g.T), np.inf)
        x, y = np.unravel_index(int(np.argmin(slack)), slack.shape)
        violations.append(Violation('C1', (int(x), int(y)), float(slack[x, y]), int(asym.sum())))

    row_sums = g.sum(axis=1)
    bad_rows = np.abs(row_sums) > tol
    if bad_rows.any():
        x = int(np.argmax(np.abs(row_sums)))
        violations.append(Violation('C2', (x,), -float(abs(row_sums[x])), int(bad_rows.sum())))

    worst, witness, count = np.inf, None, 0
    for x in range(n):
        slack = g[x, x] + g - g[x][None, :] - g[x][:, None]
        bad = slack < -tol
        if bad.any():
            count += int(bad.sum())
            y, z = np.unravel_index(int(np.argmin(slack)), slack.shape)
            if slack[y, z] < worst:
                worst, witness = float(slack[y, z]), (x, int(y), int(z))
    if witness is not None:
        violations.append(Violation('C3', witness, worst, count))

    report = ValidationReport('cohesion', n, tol, tuple(violations))
    if not report.passed:
        logger.info(f"Cohesion check failed on {n} points: {', '.join(report.failed_axioms())}")
    return report


def find_negative_direction(G, max_points: int = 10) -> Optional[np.ndarray]:
    """
    Search {-1, 0, 1}^n for a vector v with v^T G v < 0.

    A hit certifies that G is not positive semi-definite.

    Args:
        G: Square matrix-like
        max_points (int): Largest n the exhaustive search accepts

    Returns:
        numpy.ndarray or None: The first witness in lexicographic order, or None
    """
    g = square_array(G)
    n = g.shape[0]
    if n > max_points:
        raise DomainError(f"sign search is exhaustive; n={n} exceeds {max_points}")
    tol = Defaults.scaled_tolerance(g)
    vectors = np.array(list(itertools.product((-1.0, 0.0, 1.0), repeat=n)))
    quad = np.einsum('ij,jk,ik->i', vectors, g, vectors)
    hits = np.flatnonzero(quad < -tol)
    if not hits.size:
        return None
    return vectors[hits[0]]


def _construction_bounds(b: np.ndarray) -> np.ndarray:
    """Per-point lower bound max_{y != z, both != x} [b(x,z) + b(x,y) - b(y,z)]."""
    n = b.shape[0]
    bounds = np.full(n, -np.inf)
    if n < 3:
        return bounds
    off = ~np.eye(n, dtype=bool)
    for x in range(n):
        cand = b[x][None, :] + b[x][:, None] - b
        mask = off.copy()
        mask[x, :] = False
        mask[:, x] = False
        bounds[x] = cand[mask].max()
    return bounds


def cohesion_from_similarity(B0, diagonal: Union[str, float, np.ndarray] = 'default',
                             tolerance: Optional[float] = None) -> CohesionMatrix:
    """
    Build a cohesion measure from a symmetric similarity.

    The off-diagonal entries are kept, the diagonal is chosen by policy, the
    construction inequality is verified and the result is double centered.

    Args:
        B0: Symmetric similarity matrix; its diagonal is ignored
        diagonal: 'default' for 2*max - min of the off-diagonal entries,
            'exact' for the smallest admissible value per point, or explicit
            values (a scalar or one value per point)
        tolerance (float, optional): Relative tolerance

    Returns:
        CohesionMatrix: A matrix satisfying C1-C3

    Raises:
        DomainError: If B0 is not symmetric or the policy is unknown
        ConstructionError: If explicit diagonal values are too small
    """
    b = square_array(B0)
    n = b.shape[0]
    tol = Defaults.scaled_tolerance(b, tolerance)
    off = ~np.eye(n, dtype=bool)
    if np.any(np.abs(b - b.T)[off] > tol):
        raise DomainError("similarity must be symmetric off the diagonal")

    bounds = _construction_bounds(b)
    if isinstance(diagonal, str):
        if n < 2:
            diag = np.zeros(n)
        elif diagonal == 'default':
            diag = np.full(n, 2 * b[off].max() - b[off].min())
        elif diagonal == 'exact':
            diag = bounds if n >= 3 else np.full(n, b[0, 1])
        else:
            raise DomainError(f"unknown diagonal policy: {diagonal}")
    else:
        diag = np.broadcast_to(np.asarray(diagonal, dtype=np.float64), (n,)).copy()

    short = np.flatnonzero(diag < bounds - tol)
    if short.size:
        x = int(short[0])
        raise ConstructionError(
            f"diagonal value {diag[x]} at point {x} is below the required bound {bounds[x]}")
    pair_slack = diag[:, None] + diag[None, :] - 2 * b
    if n >= 2 and np.any(pair_slack[off] < -tol):
        x, y = np.argwhere((pair_slack < -tol) & off)[0]
        raise ConstructionError(f"diagonal values at points {x} and {y} are below the pair bound")

    b1 = b.copy()
    np.fill_diagonal(b1, diag)
    beta = b1 - b1.mean(axis=0)[None, :] - b1.mean(axis=1)[:, None] + b1.mean() if n else b1
    return CohesionMatrix(beta)


def graph_cohesion(A) -> CohesionMatrix:
    """
    Cohesion measure of a simple undirected graph.

    beta(i,j) = 2 delta_ij + a_ij - (2 + k_i)/n - (2 + k_j)/n + (2m + 2n)/n^2

    Args:
        A: 0/1 adjacency matrix, or a networkx graph on nodes 0..n-1

    Returns:
        CohesionMatrix: The graph cohesion measure

    Raises:
        GraphInputError: If the adjacency is not that of a simple graph
    """
    if isinstance(A, nx.Graph):
        a = nx.to_numpy_array(A, nodelist=sorted(A.nodes), weight=None)
    else:
        a = square_array(A)
    if not np.isin(a, (0.0, 1.0)).all():
        raise GraphInputError("adjacency entries must be 0 or 1")
    if np.any(np.diag(a) != 0):
        raise GraphInputError("adjacency has self-loops")
    if np.any(a != a.T):
        raise GraphInputError("adjacency is not symmetric")
    n = a.shape[0]
    if not n:
        return CohesionMatrix(np.zeros((0, 0)))
    k = a.sum(axis=1)
    m = k.sum() / 2.0
    beta = (2.0 * np.eye(n) + a - (2.0 + k)[:, None] / n - (2.0 + k)[None, :] / n
            + (2.0 * m + 2.0 * n) / n ** 2)
    return CohesionMatrix(beta)
