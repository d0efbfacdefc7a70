#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Cohesion Clustering
Main entry point for the command-line toolkit.
"""

import sys
import logging

from cohesion_clustering.cli import main as cli_main

# Configure logging; stdout is reserved for pipeline output
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[
        logging.StreamHandler(sys.stderr)
    ]
)

logger = logging.getLogger(__name__)


def run():
    """Console-script entry: run one command and exit with its status."""
    try:
        status = cli_main(sys.argv[1:])
    except Exception as e:
        logger.exception(f"Unexpected failure: {e}")
        status = 1
    sys.exit(status)


if __name__ == '__main__':
    run()
