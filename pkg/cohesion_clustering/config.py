# -*- coding: utf-8 -*-

"""
Configuration Module
Default constants and the run configuration echoed into run reports
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping, Optional

import yaml

from .errors import UsageProblem

logger = logging.getLogger(__name__)


class Defaults:
    """
    Default parameters for algorithms, generators and the command line.
    """

    # Numerical tolerance, scaled by the largest absolute matrix entry
    TOLERANCE = 1e-9

    # K-sets
    MAX_PASSES = 100
    SEED = 42

    # Hierarchical
    POLICY = 'greedy_max'

    # Two rings
    RING_OUTER_COUNT = 300
    RING_INNER_COUNT = 200
    RING_OUTER_RADIUS = (20.0, 22.0)
    RING_INNER_RADIUS = (10.0, 12.0)
    RING_EPSILON = 5.0

    # Stochastic block model
    SBM_NODES = 1000
    SBM_BLOCKS = 2
    SBM_MEAN_DEGREE = 3.0
    SBM_DELTA = 5.9
    SBM_SWEEP_START = 2.5
    SBM_SWEEP_STOP = 5.9
    SBM_SWEEP_STEP = 0.1
    SBM_GRAPHS_PER_SETTING = 20

    @staticmethod
    def scaled_tolerance(matrix, tolerance=None):
        """
        Absolute tolerance for a matrix: the relative tolerance times its largest entry.

        Args:
            matrix (numpy.ndarray): Matrix whose magnitude sets the scale
            tolerance (float, optional): Relative tolerance, defaults to TOLERANCE

        Returns:
            float: Absolute tolerance (the bare relative tolerance for an all-zero matrix)
        """
        rel = Defaults.TOLERANCE if tolerance is None else tolerance
        scale = float(abs(matrix).max()) if matrix.size else 0.0
        return rel * scale if scale > 0 else rel


@dataclass(frozen=True)
class RunConfig:
    """Everything a CLI command was run with; serialised into the run report."""

    command: str
    input: Optional[str] = None
    output: Optional[str] = None
    k: Optional[int] = None
    seed: int = Defaults.SEED
    policy: str = Defaults.POLICY
    max_passes: int = Defaults.MAX_PASSES
    tolerance: float = Defaults.TOLERANCE
    init: Optional[str] = None
    truth: Optional[str] = None

    @classmethod
    def from_mapping(cls, command: str, values: Mapping[str, Any]) -> "RunConfig":
        known = {f.name for f in dataclasses.fields(cls)} - {'command'}
        unknown = sorted(set(values) - known)
        if unknown:
            raise UsageProblem(f"unknown configuration keys: {', '.join(unknown)}")
        return cls(command=command, **dict(values))

    @classmethod
    def from_file(cls, command: str, path: Path) -> "RunConfig":
        """
        Load a run configuration from a YAML (or JSON) mapping.

        Args:
            command (str): Command the configuration is for
            path (Path): YAML or JSON file

        Returns:
            RunConfig: The loaded configuration
        """
        try:
            with open(path, 'r') as f:
                values = yaml.safe_load(f)
        except (OSError, yaml.YAMLError) as e:
            raise UsageProblem(f"cannot read config {path}: {e}") from e
        if not isinstance(values, dict):
            raise UsageProblem(f"config {path} must hold a mapping of option names to values")
        logger.info(f"Loaded run configuration from {path}")
        return cls.from_mapping(command, values)

    def override(self, **changes: Any) -> "RunConfig":
        """Return a copy where every non-None keyword replaces the stored value."""
        return dataclasses.replace(self, **{k: v for k, v in changes.items() if v is not None})

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)
