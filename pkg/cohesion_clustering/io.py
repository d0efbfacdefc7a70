# -*- coding: utf-8 -*-

"""
IO Module
Plain-text file formats: matrices, point clouds, edge lists and label files.
The path '-' stands for stdin when reading and stdout when writing.
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Iterator, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from .config import Defaults
from .errors import DataFormatError
from .graphs import make_graph
from .metric_core import DistanceMatrix

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

NODES_PREFIX = '# nodes:'


def read_text(path: PathLike) -> str:
    if str(path) == '-':
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as e:
        raise DataFormatError(path, 0, f"cannot read file: {e.strerror or e}") from e


def write_text(path: PathLike, text: str):
    if str(path) == '-':
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        Path(path).write_text(text)
    except OSError as e:
        raise DataFormatError(path, 0, f"cannot write file: {e.strerror or e}") from e
    logger.debug(f"Wrote {path}")


def _lines(text: str) -> Iterator[Tuple[int, str]]:
    # trailing blank lines are tolerated, interior ones are not
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    for number, line in enumerate(lines, start=1):
        yield number, line.strip()


def _number(path, line: int, token: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise DataFormatError(path, line, f"not a number: {token!r}") from None
    if not np.isfinite(value):
        raise DataFormatError(path, line, f"value must be finite: {token!r}")
    return value


def _integer(path, line: int, token: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise DataFormatError(path, line, f"not an integer: {token!r}") from None


def read_matrix(path: PathLike, symmetric: bool = False,
                tolerance: Optional[float] = None) -> np.ndarray:
    """
    Read an n x n comma-separated matrix without header.

    Args:
        path: File name or '-'
        symmetric (bool): Reject entries whose mirror differs beyond tolerance
        tolerance (float, optional): Relative tolerance, scaled by the largest entry

    Returns:
        numpy.ndarray: The matrix

    Raises:
        DataFormatError: With the 1-based line of the first offending row
    """
    rows = []
    for number, line in _lines(read_text(path)):
        if not line:
            raise DataFormatError(path, number, "empty line")
        row = [_number(path, number, token.strip()) for token in line.split(',')]
        if rows and len(row) != len(rows[0]):
            raise DataFormatError(path, number, f"expected {len(rows[0])} values, found {len(row)}")
        rows.append(row)
    if not rows:
        raise DataFormatError(path, 0, "no matrix rows")
    if len(rows) != len(rows[0]):
        raise DataFormatError(path, len(rows), f"matrix has {len(rows)} rows but {len(rows[0])} columns")

    values = np.array(rows, dtype=np.float64)
    if symmetric:
        tol = Defaults.scaled_tolerance(values, tolerance)
        bad = np.argwhere(np.abs(values - values.T) > tol)
        if bad.size:
            x, y = (int(v) for v in bad[0])
            raise DataFormatError(path, x + 1,
                                  f"matrix is not symmetric: entry ({x}, {y}) differs from ({y}, {x})")
    logger.debug(f"Read {values.shape[0]} x {values.shape[0]} matrix from {path}")
    return values


def read_distance(path: PathLike, tolerance: Optional[float] = None) -> DistanceMatrix:
    return DistanceMatrix(read_matrix(path, symmetric=True, tolerance=tolerance))


def format_matrix(values) -> str:
    """One line per row, entries in shortest round-trip decimal form."""
    arr = np.asarray(getattr(values, 'values', values), dtype=np.float64)
    return ''.join(','.join(repr(float(v)) for v in row) + '\n' for row in arr)


def write_matrix(path: PathLike, values):
    write_text(path, format_matrix(values))


def read_points(path: PathLike) -> Tuple[np.ndarray, Optional[tuple]]:
    """
    Read a point cloud written as 'x,y' or 'x,y,label' lines.

    Returns:
        tuple: (n x 2 coordinates, labels or None when the file has none)
    """
    coords, labels = [], []
    width = None
    for number, line in _lines(read_text(path)):
        fields = [f.strip() for f in line.split(',')]
        if width is None:
            width = len(fields)
            if width not in (2, 3):
                raise DataFormatError(path, number, f"expected 'x,y' or 'x,y,label', found {width} fields")
        elif len(fields) != width:
            raise DataFormatError(path, number, f"expected {width} fields, found {len(fields)}")
        coords.append((_number(path, number, fields[0]), _number(path, number, fields[1])))
        if width == 3:
            labels.append(_integer(path, number, fields[2]))
    if not coords:
        raise DataFormatError(path, 0, "no points")
    return np.array(coords, dtype=np.float64), (tuple(labels) if width == 3 else None)


def write_points(path: PathLike, points, labels: Optional[Sequence[int]] = None):
    pts = np.asarray(points, dtype=np.float64)
    if labels is None:
        text = ''.join(f"{x!r},{y!r}\n" for x, y in pts.tolist())
    else:
        text = ''.join(f"{x!r},{y!r},{int(c)}\n" for (x, y), c in zip(pts.tolist(), labels))
    write_text(path, text)


def read_edge_list(path: PathLike, n: Optional[int] = None) -> nx.Graph:
    """
    Read a whitespace-separated 'u v' edge list with 0-based node ids.

    Lines starting with '#' are comments; a '# nodes: N' comment fixes the
    node count so trailing isolated nodes survive. Otherwise n is the largest
    id plus one. Duplicate edges are collapsed with a warning.

    Args:
        path: File name or '-'
        n (int, optional): Node count, overrides the file

    Returns:
        networkx.Graph: The simple graph

    Raises:
        DataFormatError: On malformed lines, negative ids or self-loops
    """
    edges = []
    declared = None
    for number, line in _lines(read_text(path)):
        if line.startswith('#'):
            if line.startswith(NODES_PREFIX):
                declared = _integer(path, number, line[len(NODES_PREFIX):].strip())
            continue
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise DataFormatError(path, number, f"expected 'u v', found {len(fields)} fields")
        u, v = (_integer(path, number, f) for f in fields)
        if u < 0 or v < 0:
            raise DataFormatError(path, number, f"negative node id in edge ({u}, {v})")
        if u == v:
            raise DataFormatError(path, number, f"self-loop at node {u}")
        edges.append((u, v, number))

    top = max((max(u, v) for u, v, _ in edges), default=-1) + 1
    count = n if n is not None else (declared if declared is not None else top)
    for u, v, number in edges:
        if max(u, v) >= count:
            raise DataFormatError(path, number, f"edge ({u}, {v}) outside [0, {count})")
    g = make_graph(count, ((u, v) for u, v, _ in edges))
    logger.info(f"Read graph from {path}: {count} nodes, {g.number_of_edges()} edges")
    return g


def write_edge_list(path: PathLike, g: nx.Graph):
    edges = sorted((min(u, v), max(u, v)) for u, v in g.edges)
    text = f"{NODES_PREFIX} {g.number_of_nodes()}\n" + ''.join(f"{u} {v}\n" for u, v in edges)
    write_text(path, text)


def read_labels(path: PathLike) -> tuple:
    """One integer label per line; line i holds the label of point i."""
    labels = []
    for number, line in _lines(read_text(path)):
        if not line:
            raise DataFormatError(path, number, "empty line")
        labels.append(_integer(path, number, line))
    return tuple(labels)


def write_labels(path: PathLike, labels: Sequence[int]):
    write_text(path, ''.join(f"{int(c)}\n" for c in labels))
