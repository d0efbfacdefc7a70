# -*- coding: utf-8 -*-

"""
Cohesion Clustering
Clustering in metric spaces through cohesion measures: the cluster
predicate, agglomerative merging, K-sets and its dual, graph distances,
synthetic benchmarks and NMI scoring.
"""

from .cohesion import (
    ClusterReport,
    CohesionMatrix,
    cohesion_from_similarity,
    cohesion_matrix,
    cohesion_point,
    cohesion_sets,
    dual_distance,
    find_negative_direction,
    graph_cohesion,
    is_cluster,
    theorem1_statements,
    validate_cohesion,
)
from .config import Defaults, RunConfig
from .datagen import LabeledDataset, gen_sbm, gen_two_rings, sbm_rates, sbm_sweep, sbm_threshold
from .errors import (
    AxiomError,
    ClusteringError,
    ConstructionError,
    DataFormatError,
    DisconnectedGraphError,
    DomainError,
    GraphInputError,
    ShapeError,
)
from .evaluation import ContingencyTable, contingency_table, nmi
from .graphs import epsilon_graph, geodesic_distance, largest_component, make_graph, resistance_distance
from .hierarchical import MergeEvent, MergePolicy, MergeTree, Partition, format_dendrogram, modularity, run_hierarchical
from .ksets import (
    KSetsRun,
    MoveRecord,
    kernel_identity_check,
    ksets_objective,
    normalized_modularity,
    random_partition,
    run_dual_ksets,
    run_ksets,
    triangular_distance,
    triangular_distance_cohesion,
)
from .metric_core import (
    DistanceMatrix,
    PointSet,
    ValidationReport,
    Violation,
    avg_distance,
    rel_distance_point,
    rel_distance_sets,
    rel_distance_to_point,
    validate_metric,
)

__version__ = "0.1.0"
