# -*- coding: utf-8 -*-

"""
Errors Module
Exception hierarchy shared by the clustering toolkit
"""

from __future__ import annotations


class ClusteringError(Exception):
    """Base class for every error raised by the toolkit."""


class DomainError(ClusteringError, ValueError):
    """An argument lies outside the domain of an operation (empty set, K > n, ...)."""


class ShapeError(ClusteringError, ValueError):
    """A matrix argument is not square."""


class AxiomError(ClusteringError):
    """
    A matrix failed a metric or cohesion axiom check.

    Args:
        message (str): Human readable summary
        report (ValidationReport, optional): The failing report
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ConstructionError(ClusteringError):
    """A cohesion measure cannot be built from the given similarity."""


class GraphInputError(ClusteringError, ValueError):
    """A graph is not simple (self-loops, weights, asymmetric adjacency)."""


class DisconnectedGraphError(ClusteringError):
    """
    A graph distance was requested on a disconnected graph.

    Args:
        first (int): A node of one component
        second (int): A node of another component
    """

    def __init__(self, first, second):
        super().__init__(
            f"graph is disconnected: node {first} and node {second} lie in different components"
        )
        self.first = first
        self.second = second


class DataFormatError(ClusteringError):
    """
    A data file could not be parsed.

    Args:
        path (str): File name (or '-' for stdin)
        line (int): 1-based line number, 0 when the problem is file-wide
        reason (str): What went wrong
    """

    def __init__(self, path, line, reason):
        where = f"{path}:{line}" if line else str(path)
        super().__init__(f"{where}: {reason}")
        self.path = path
        self.line = line
        self.reason = reason


class UsageProblem(ClusteringError):
    """A command line configuration is infeasible (for example K > n)."""


class VerificationFailed(ClusteringError):
    """A `verify` command found a violated property."""
