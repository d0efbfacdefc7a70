# -*- coding: utf-8 -*-

"""
CLI Module
Command-line front end: generation, distances, clustering, verification,
scoring and parameter sweeps, each stage reading and writing plain files.
"""

from __future__ import annotations

import contextlib
import json
import logging
import time
from enum import Enum
from pathlib import Path
from typing import List, Optional

import numpy as np
import typer

try:
    # newer typer releases ship their own copy of click
    from typer._click.exceptions import UsageError
except ImportError:
    from click.exceptions import UsageError

from .cohesion import (
    CohesionMatrix,
    cohesion_matrix,
    dual_distance,
    graph_cohesion,
    is_cluster,
    theorem1_statements,
    validate_cohesion,
)
from .config import Defaults, RunConfig
from .datagen import gen_sbm, gen_two_rings, sbm_rates, sbm_sweep
from .errors import (
    AxiomError,
    ConstructionError,
    DataFormatError,
    DisconnectedGraphError,
    DomainError,
    GraphInputError,
    ShapeError,
    UsageProblem,
    VerificationFailed,
)
from .evaluation import nmi
from .graphs import epsilon_graph, geodesic_distance, largest_component, resistance_distance
from .hierarchical import MergePolicy, Partition, format_dendrogram, modularity, run_hierarchical
from .io import (
    read_distance,
    read_edge_list,
    read_labels,
    read_matrix,
    read_points,
    write_edge_list,
    write_labels,
    write_matrix,
    write_points,
    write_text,
)
from .ksets import normalized_modularity, run_dual_ksets, run_ksets
from .metric_core import DistanceMatrix, PointSet, validate_metric

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_VERIFY = 3

DATA_ERRORS = (DataFormatError, DomainError, ShapeError, GraphInputError,
               DisconnectedGraphError, AxiomError, ConstructionError)


class Disconnected(str, Enum):
    ERROR = 'error'
    CAP = 'cap'


app = typer.Typer(
    name="cohesion-clustering",
    help="Cluster points and graphs with cohesion measures, K-sets and agglomerative merging",
    add_completion=False,
    no_args_is_help=True,
)
gen_app = typer.Typer(help="Generate synthetic datasets", no_args_is_help=True)
dist_app = typer.Typer(help="Build distance and cohesion matrices", no_args_is_help=True)
cluster_app = typer.Typer(help="Run a clustering algorithm", no_args_is_help=True)
verify_app = typer.Typer(help="Check axioms and identities; exit 3 on failure", no_args_is_help=True)
score_app = typer.Typer(help="Score a partition", no_args_is_help=True)
sweep_app = typer.Typer(help="Parameter sweeps emitting plot-ready CSV", no_args_is_help=True)
app.add_typer(gen_app, name="gen")
app.add_typer(dist_app, name="dist")
app.add_typer(cluster_app, name="cluster")
app.add_typer(verify_app, name="verify")
app.add_typer(score_app, name="score")
app.add_typer(sweep_app, name="sweep")


@app.callback()
def _root(verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging")):
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)


@contextlib.contextmanager
def _exit_codes():
    """Translate toolkit errors into the documented exit statuses."""
    try:
        yield
    except UsageProblem as e:
        typer.echo(f"Usage error: {e}", err=True)
        raise typer.Exit(EXIT_USAGE)
    except VerificationFailed as e:
        typer.echo(f"Verification failed: {e}", err=True)
        raise typer.Exit(EXIT_VERIFY)
    except DATA_ERRORS as e:
        logger.error(f"{type(e).__name__}: {e}")
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(EXIT_DATA)


def _dump(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + '\n'


def _resolve(command: str, config_file: Optional[Path], **flags) -> RunConfig:
    base = RunConfig.from_file(command, config_file) if config_file else RunConfig(command=command)
    return base.override(**flags)


def _parse_set(text: str) -> PointSet:
    try:
        return PointSet.of(int(t) for t in text.split(',') if t.strip())
    except ValueError:
        raise typer.BadParameter(f"expected comma-separated point indices, got {text!r}") from None


def _check_k(k: Optional[int], n: int) -> int:
    if k is None:
        raise UsageProblem("--k is required")
    if not 2 <= k <= n:
        raise UsageProblem(f"K={k} is infeasible for {n} points (need 2 <= K <= n)")
    return k


def _load_graph(input: str, eps: Optional[float], labels_out: Optional[str]):
    if eps is None:
        return read_edge_list(input)
    points, labels = read_points(input)
    if labels_out:
        if labels is None:
            raise UsageProblem(f"--labels-out given but {input} carries no labels")
        write_labels(labels_out, labels)
    return epsilon_graph(points, eps)


def _policy(disconnected: Optional[Disconnected], eps: Optional[float]) -> str:
    # epsilon graphs of separated clouds are disconnected by construction
    if disconnected is not None:
        return disconnected.value
    return Disconnected.CAP.value if eps is not None else Disconnected.ERROR.value


def _partition_summary(G, partition: Partition, truth: Optional[str]) -> dict:
    summary = {
        'n': partition.n,
        'K': partition.K,
        'Q': modularity(G, partition),
        'R': normalized_modularity(G, partition),
        'sizes': [len(s) for s in partition.sets],
    }
    if truth:
        expected = read_labels(truth)
        summary['NMI'] = nmi(partition.assignment, expected)
    return summary


def _finish(cfg: RunConfig, partition: Partition, report: Optional[Path], payload: dict, started: float):
    write_labels(cfg.output or '-', partition.assignment)
    if 'NMI' in payload:
        logger.info(f"NMI against {cfg.truth}: {payload['NMI']}")
    if report:
        payload['config'] = cfg.as_dict()
        payload['timing'] = {'seconds': time.perf_counter() - started}
        write_text(report, _dump(payload))


# ---------------------------------------------------------------- gen

@gen_app.command("rings")
def gen_rings(
    seed: int = typer.Option(Defaults.SEED, "--seed", "-s", help="Generator seed"),
    n_outer: int = typer.Option(Defaults.RING_OUTER_COUNT, "--n-outer", help="Outer ring points"),
    n_inner: int = typer.Option(Defaults.RING_INNER_COUNT, "--n-inner", help="Inner ring points"),
    output: str = typer.Option("-", "--out", "-o", help="Points CSV 'x,y,label'"),
):
    """Two concentric noisy rings."""
    with _exit_codes():
        data = gen_two_rings(n_outer, n_inner, seed=seed)
        write_points(output, data.points, data.labels)


@gen_app.command("sbm")
def gen_sbm_command(
    n: int = typer.Option(Defaults.SBM_NODES, "--n", help="Nodes before isolated ones are dropped"),
    q: int = typer.Option(Defaults.SBM_BLOCKS, "--q", help="Number of blocks"),
    mean_degree: float = typer.Option(Defaults.SBM_MEAN_DEGREE, "--mean-degree", help="Mean degree"),
    delta: float = typer.Option(Defaults.SBM_DELTA, "--delta", help="c_in - c_out"),
    seed: int = typer.Option(Defaults.SEED, "--seed", "-s", help="Generator seed"),
    output: str = typer.Option("-", "--out", "-o", help="Edge list file"),
    labels_out: Optional[str] = typer.Option(None, "--labels-out", help="Block label file"),
):
    """Planted-partition stochastic block model."""
    with _exit_codes():
        c_in, c_out = sbm_rates(q, mean_degree, delta)
        data = gen_sbm(n, q, c_in, c_out, seed)
        write_edge_list(output, data.graph)
        if labels_out:
            write_labels(labels_out, data.labels)


# ---------------------------------------------------------------- dist

@dist_app.command("euclidean")
def dist_euclidean(
    input: str = typer.Option("-", "--input", "-i", help="Points CSV"),
    output: str = typer.Option("-", "--out", "-o", help="Distance matrix CSV"),
    labels_out: Optional[str] = typer.Option(None, "--labels-out", help="Copy point labels here"),
):
    """Euclidean distances of a point cloud."""
    with _exit_codes():
        points, labels = read_points(input)
        if labels_out and labels is not None:
            write_labels(labels_out, labels)
        write_matrix(output, DistanceMatrix.from_points(points))


def _graph_distance(kind, input, eps, disconnected, output, labels_out):
    with _exit_codes():
        g = _load_graph(input, eps, labels_out)
        write_matrix(output, kind(g, disconnected=_policy(disconnected, eps)))


@dist_app.command("geodesic")
def dist_geodesic(
    input: str = typer.Option("-", "--input", "-i", help="Edge list, or points CSV with --eps"),
    eps: Optional[float] = typer.Option(None, "--eps", help="Build the epsilon graph of a point cloud"),
    disconnected: Optional[Disconnected] = typer.Option(
        None, "--disconnected", help="error, or cap cross-component distances at n (default with --eps)"),
    output: str = typer.Option("-", "--out", "-o", help="Distance matrix CSV"),
    labels_out: Optional[str] = typer.Option(None, "--labels-out", help="Copy point labels here"),
):
    """Hop-count distances of a graph."""
    _graph_distance(geodesic_distance, input, eps, disconnected, output, labels_out)


@dist_app.command("resistance")
def dist_resistance(
    input: str = typer.Option("-", "--input", "-i", help="Edge list, or points CSV with --eps"),
    eps: Optional[float] = typer.Option(None, "--eps", help="Build the epsilon graph of a point cloud"),
    disconnected: Optional[Disconnected] = typer.Option(
        None, "--disconnected", help="error, or cap cross-component distances at n (default with --eps)"),
    output: str = typer.Option("-", "--out", "-o", help="Distance matrix CSV"),
    labels_out: Optional[str] = typer.Option(None, "--labels-out", help="Copy point labels here"),
):
    """Effective resistance distances of a graph."""
    _graph_distance(resistance_distance, input, eps, disconnected, output, labels_out)


@dist_app.command("cohesion")
def dist_cohesion(
    input: str = typer.Option("-", "--input", "-i", help="Distance matrix CSV"),
    output: str = typer.Option("-", "--out", "-o", help="Cohesion matrix CSV"),
):
    """Convert a distance matrix into its cohesion measure."""
    with _exit_codes():
        write_matrix(output, cohesion_matrix(read_distance(input)))


# ---------------------------------------------------------------- cluster

@cluster_app.command("hier")
def cluster_hier(
    input: Optional[str] = typer.Option(None, "--input", "-i", help="Distance matrix CSV [default: stdin]"),
    output: Optional[str] = typer.Option(None, "--out", "-o", help="Label file [default: stdout]"),
    policy: Optional[MergePolicy] = typer.Option(None, "--policy", help="Merge policy"),
    tolerance: Optional[float] = typer.Option(None, "--tolerance", help="Relative tolerance"),
    force_to_root: bool = typer.Option(False, "--force-to-root", help="Record forced merges down to one set"),
    dendrogram: Optional[str] = typer.Option(None, "--dendrogram", help="Write the merge events here"),
    truth: Optional[str] = typer.Option(None, "--truth", help="Ground-truth label file for NMI"),
    report: Optional[Path] = typer.Option(None, "--report", help="JSON run report"),
    config_file: Optional[Path] = typer.Option(None, "--config", "-c", help="YAML or JSON run configuration"),
):
    """Agglomerative clustering by merging cohesive sets."""
    started = time.perf_counter()
    with _exit_codes():
        cfg = _resolve('cluster hier', config_file, input=input, output=output, truth=truth,
                       policy=policy.value if policy else None, tolerance=tolerance)
        D = read_distance(cfg.input or '-', cfg.tolerance)
        G = cohesion_matrix(D)
        tree = run_hierarchical(G, cfg.policy, force_to_root=force_to_root, tolerance=cfg.tolerance)
        if dendrogram:
            write_text(dendrogram, format_dendrogram(tree))
        partition = tree.partition()
        payload = _partition_summary(G, partition, cfg.truth)
        payload.update({
            'merges': len(tree.events),
            'forced_merges': len(tree.forced_events),
            'q_trace': list(tree.q_trace),
            'all_clusters': all(is_cluster(G, s, cfg.tolerance) for s in tree.final_sets),
        })
        _finish(cfg, partition, report, payload, started)


def _ksets_payload(run, G, cfg: RunConfig) -> dict:
    payload = _partition_summary(G, run.final, cfg.truth)
    payload.update({
        'moves': run.moves,
        'skipped_moves': run.skipped,
        'passes': run.passes,
        'converged': run.converged,
        'r_trace': list(run.r_trace),
    })
    return payload


def _initial(cfg: RunConfig):
    return list(read_labels(cfg.init)) if cfg.init else None


@cluster_app.command("ksets")
def cluster_ksets(
    input: Optional[str] = typer.Option(None, "--input", "-i", help="Distance matrix CSV [default: stdin]"),
    output: Optional[str] = typer.Option(None, "--out", "-o", help="Label file [default: stdout]"),
    k: Optional[int] = typer.Option(None, "--k", "-k", help="Number of sets"),
    seed: Optional[int] = typer.Option(None, "--seed", "-s", help="Seed of the random initial partition"),
    init: Optional[str] = typer.Option(None, "--init", help="Initial label file"),
    max_passes: Optional[int] = typer.Option(None, "--max-passes", help="Upper bound on passes"),
    tolerance: Optional[float] = typer.Option(None, "--tolerance", help="Relative move tolerance"),
    truth: Optional[str] = typer.Option(None, "--truth", help="Ground-truth label file for NMI"),
    report: Optional[Path] = typer.Option(None, "--report", help="JSON run report"),
    config_file: Optional[Path] = typer.Option(None, "--config", "-c", help="YAML or JSON run configuration"),
):
    """K-sets on a distance matrix."""
    started = time.perf_counter()
    with _exit_codes():
        cfg = _resolve('cluster ksets', config_file, input=input, output=output, k=k, seed=seed,
                       init=init, max_passes=max_passes, tolerance=tolerance, truth=truth)
        D = read_distance(cfg.input or '-', cfg.tolerance)
        K = _check_k(cfg.k, D.n)
        run = run_ksets(D, K, init=_initial(cfg), seed=cfg.seed,
                        max_passes=cfg.max_passes, tolerance=cfg.tolerance)
        _finish(cfg, run.final, report, _ksets_payload(run, cohesion_matrix(D), cfg), started)


@cluster_app.command("dual-ksets")
def cluster_dual_ksets(
    input: Optional[str] = typer.Option(None, "--input", "-i", help="Cohesion matrix CSV [default: stdin]"),
    from_distance: bool = typer.Option(False, "--from-distance", help="Input is a distance matrix"),
    from_graph: bool = typer.Option(False, "--from-graph", help="Input is an edge list; use the graph cohesion"),
    output: Optional[str] = typer.Option(None, "--out", "-o", help="Label file [default: stdout]"),
    k: Optional[int] = typer.Option(None, "--k", "-k", help="Number of sets"),
    seed: Optional[int] = typer.Option(None, "--seed", "-s", help="Seed of the random initial partition"),
    init: Optional[str] = typer.Option(None, "--init", help="Initial label file"),
    max_passes: Optional[int] = typer.Option(None, "--max-passes", help="Upper bound on passes"),
    tolerance: Optional[float] = typer.Option(None, "--tolerance", help="Relative move tolerance"),
    truth: Optional[str] = typer.Option(None, "--truth", help="Ground-truth label file for NMI"),
    report: Optional[Path] = typer.Option(None, "--report", help="JSON run report"),
    config_file: Optional[Path] = typer.Option(None, "--config", "-c", help="YAML or JSON run configuration"),
):
    """Dual K-sets on a cohesion matrix."""
    started = time.perf_counter()
    with _exit_codes():
        if from_distance and from_graph:
            raise UsageProblem("--from-distance and --from-graph are exclusive")
        cfg = _resolve('cluster dual-ksets', config_file, input=input, output=output, k=k, seed=seed,
                       init=init, max_passes=max_passes, tolerance=tolerance, truth=truth)
        source = cfg.input or '-'
        if from_graph:
            G = graph_cohesion(read_edge_list(source))
        elif from_distance:
            G = cohesion_matrix(read_distance(source, cfg.tolerance))
        else:
            G = CohesionMatrix(read_matrix(source))
        K = _check_k(cfg.k, G.n)
        run = run_dual_ksets(G, K, init=_initial(cfg), seed=cfg.seed,
                             max_passes=cfg.max_passes, tolerance=cfg.tolerance)
        _finish(cfg, run.final, report, _ksets_payload(run, G, cfg), started)


# ---------------------------------------------------------------- verify

def _verdict(payload: dict, passed: bool, what: str):
    typer.echo(_dump(payload), nl=False)
    if not passed:
        raise VerificationFailed(what)


@verify_app.command("metric")
def verify_metric(
    input: str = typer.Option("-", "--input", "-i", help="Matrix CSV"),
    tolerance: Optional[float] = typer.Option(None, "--tolerance", help="Relative tolerance"),
):
    """Check the distance axioms; prints the validation report."""
    with _exit_codes():
        report = validate_metric(read_matrix(input), tolerance)
        _verdict(report.as_dict(), report.passed, f"not a metric ({', '.join(report.failed_axioms())})")


@verify_app.command("cohesion")
def verify_cohesion(
    input: str = typer.Option("-", "--input", "-i", help="Matrix CSV"),
    tolerance: Optional[float] = typer.Option(None, "--tolerance", help="Relative tolerance"),
):
    """Check the cohesion axioms; prints the validation report."""
    with _exit_codes():
        report = validate_cohesion(read_matrix(input), tolerance)
        _verdict(report.as_dict(), report.passed,
                 f"not a cohesion measure ({', '.join(report.failed_axioms())})")


@verify_app.command("duality")
def verify_duality(
    input: str = typer.Option("-", "--input", "-i", help="Distance matrix CSV"),
    tolerance: Optional[float] = typer.Option(None, "--tolerance", help="Relative tolerance"),
):
    """Round-trip distance -> cohesion -> distance and back; prints the largest errors."""
    with _exit_codes():
        D = read_distance(input, tolerance)
        G = cohesion_matrix(D)
        d_error = float(np.abs(dual_distance(G).values - D.values).max(initial=0.0))
        g_error = float(np.abs(cohesion_matrix(dual_distance(G)).values - G.values).max(initial=0.0))
        tol = Defaults.scaled_tolerance(D.values, tolerance)
        passed = max(d_error, g_error) <= tol
        payload = {'n': D.n, 'distance_error': d_error, 'cohesion_error': g_error,
                   'tolerance': tol, 'passed': passed}
        _verdict(payload, passed, f"round trip error {max(d_error, g_error)} exceeds {tol}")


@verify_app.command("theorem1")
def verify_theorem1(
    input: str = typer.Option("-", "--input", "-i", help="Distance matrix CSV"),
    points: str = typer.Option(..., "--set", help="Comma-separated point indices"),
    tolerance: Optional[float] = typer.Option(None, "--tolerance", help="Relative tolerance"),
):
    """Evaluate the ten equivalent cluster statements for one set; fails if they disagree."""
    S = _parse_set(points)
    with _exit_codes():
        report = theorem1_statements(read_distance(input, tolerance), S, tolerance)
        _verdict(report.as_dict(), report.unanimous, "cluster statements disagree")


# ---------------------------------------------------------------- score

@score_app.command("nmi")
def score_nmi(
    labels: str = typer.Option(..., "--labels", "-l", help="Label file"),
    truth: str = typer.Option(..., "--truth", "-t", help="Ground-truth label file"),
):
    """Normalized mutual information of two labelings."""
    with _exit_codes():
        typer.echo(repr(nmi(read_labels(labels), read_labels(truth))))


@score_app.command("modularity")
def score_modularity(
    input: str = typer.Option("-", "--input", "-i", help="Distance matrix CSV"),
    labels: str = typer.Option(..., "--labels", "-l", help="Label file"),
    normalized: bool = typer.Option(False, "--normalized", help="Report R instead of Q"),
):
    """Modularity Q (or normalized modularity R) of a labeling."""
    with _exit_codes():
        G = cohesion_matrix(read_distance(input))
        partition = Partition.from_labels(read_labels(labels))
        score = normalized_modularity(G, partition) if normalized else modularity(G, partition)
        typer.echo(repr(score))


# ---------------------------------------------------------------- sweep

@sweep_app.command("sbm")
def sweep_sbm(
    start: float = typer.Option(Defaults.SBM_SWEEP_START, "--start", help="First c_in - c_out"),
    stop: float = typer.Option(Defaults.SBM_SWEEP_STOP, "--stop", help="Last c_in - c_out"),
    step: float = typer.Option(Defaults.SBM_SWEEP_STEP, "--step", help="Grid step"),
    graphs: int = typer.Option(Defaults.SBM_GRAPHS_PER_SETTING, "--graphs", help="Graphs per setting"),
    n: int = typer.Option(Defaults.SBM_NODES, "--n", help="Nodes per graph"),
    q: int = typer.Option(Defaults.SBM_BLOCKS, "--q", help="Number of blocks"),
    mean_degree: float = typer.Option(Defaults.SBM_MEAN_DEGREE, "--mean-degree", help="Mean degree"),
    seed: int = typer.Option(Defaults.SEED, "--seed", "-s", help="Seed of the first graph"),
    output: str = typer.Option("-", "--out", "-o", help="CSV 'delta,seed,nodes,nmi'"),
):
    """K-sets on resistance distance over a grid of block-model graphs."""
    with _exit_codes():
        rows = ["delta,seed,nodes,nmi"]
        for delta, graph_seed, data in sbm_sweep(n, q, mean_degree, start, stop, step, graphs, seed):
            g, labels, _ = largest_component(data.graph, data.labels)
            run = run_ksets(resistance_distance(g), q, seed=graph_seed)
            score = nmi(run.final.assignment, labels)
            logger.info(f"delta={delta} seed={graph_seed}: {g.number_of_nodes()} nodes, NMI={score}")
            rows.append(f"{delta!r},{graph_seed},{g.number_of_nodes()},{score!r}")
        write_text(output, '\n'.join(rows) + '\n')


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run the command line and return its exit status.

    Click reports usage errors (unknown options, bad parameter values) with
    status 2; here they map to 1 so that 2 stays reserved for data errors.
    """
    try:
        result = app(args=argv, prog_name="cohesion-clustering", standalone_mode=False)
    except UsageError as e:
        e.show()
        return EXIT_USAGE
    except typer.Abort:
        typer.echo("Aborted", err=True)
        return EXIT_USAGE
    return result if isinstance(result, int) else EXIT_OK
