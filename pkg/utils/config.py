"""
Configuration Module

Contains project constants, search limits, the expected outcome of every
verification claim, and logging setup.
"""

import os
import logging
from fractions import Fraction
from typing import Dict, Any, Tuple

from rich.console import Console
from rich.logging import RichHandler


class Config:
    """Configuration class for the root-system verification toolkit."""

    # Project information
    PROJECT_NAME = "Clifford Root-System Verifier"
    VERSION = "1.0.0"

    # Search limits
    DEFAULT_MAX_CLOSURE_SIZE = 512  # |R(E8)| = 240 with margin
    MIN_GRAM_ENUMERATION_Q = 2
    MAX_GRAM_ENUMERATION_Q = 8
    MAX_CATALOG_RANK = 8

    # Norms allowed below a maximal norm of 1 (ratios 1, 2, 3)
    NORM_VALUES = (Fraction(1), Fraction(1, 2), Fraction(1, 3))

    # Families and the ranks that exist
    FAMILIES = {
        'A': {'name': 'su', 'min_rank': 1},
        'B': {'name': 'so(odd)', 'min_rank': 1},
        'C': {'name': 'sp', 'min_rank': 1},
        'D': {'name': 'so(even)', 'min_rank': 2},
        'E': {'name': 'exceptional', 'ranks': (6, 7, 8)},
        'F': {'name': 'exceptional', 'ranks': (4,)},
        'G': {'name': 'exceptional', 'ranks': (2,)},
    }

    # Expected outcomes (claims being replayed)
    EXPECTED_GRAM_COUNTS = {3: 4, 4: 2, 5: 0}
    EXPECTED_ADMISSIBLE_COUNTS = {3: 2, 4: 1}

    # Published Gram matrices (rows of rational strings)
    REFERENCE_GRAMS = {
        "Id4/4": [["1/4", "0", "0", "0"], ["0", "1/4", "0", "0"], ["0", "0", "1/4", "0"], ["0", "0", "0", "1/4"]],
        "M0": [["1/4", "0", "0", "0"], ["0", "1/8", "1/16", "1/16"], ["0", "1/16", "1/8", "1/16"], ["0", "1/16", "1/16", "1/8"]],
        "M1": [["1/2", "0", "0"], ["0", "1/4", "0"], ["0", "0", "1/4"]],
        "M2": [["1/3", "0", "1/6"], ["0", "1/4", "0"], ["1/6", "0", "1/12"]],
        "M3": [["3/8", "1/16", "1/16"], ["1/16", "1/8", "1/16"], ["1/16", "1/16", "1/8"]],
    }
    PUBLISHED_GRAMS = {3: ("M1", "M2", "M3"), 4: ("Id4/4", "M0")}
    PUBLISHED_ADMISSIBLE = {3: ("M1", "M2"), 4: ("Id4/4",)}
    EXPECTED_BOUNDS = {
        ('P1', True): 3,
        ('P1', False): 4,
        ('P2', True): 7,
        ('P2', False): 3,
        ('P3', True): 6,
        ('P3', False): 8,
        ('P4', True): 6,
        ('P4', False): 8,
    }
    EXPECTED_RANK_TABLE = {
        'I': (3, 5, 7, 9),
        'II': (2, 6, 10),
        'III': (4, 12),
        'IV': (8, 16),
    }
    EXPECTED_LIMIT_COUNTS = {
        'I': (16, 32, 48),
        'II': (32, 40, 72),
        'III': (64, 62, 126),
        'IV': (128, 112, 240),
    }
    R14_CANDIDATE_OFFSETS = (Fraction(7, 8), Fraction(3, 8), Fraction(-1, 8))
    R14_ALLOWED_PRODUCTS = (Fraction(0), Fraction(1, 2), Fraction(-1, 2))

    # File paths
    RESULTS_DIR = os.getenv('ROOTSYS_RESULTS_DIR', "results")
    LOG_PATH = os.path.join(RESULTS_DIR, "reports.json")

    # Logging settings
    LOGGING = {
        'level': os.getenv('ROOTSYS_LOG_LEVEL', 'WARNING'),
        'format': '%(name)s: %(message)s',
        'datefmt': '[%X]',
    }

    @classmethod
    def is_valid_system(cls, family: str, rank: int) -> bool:
        """Check whether (family, rank) names an existing irreducible root system."""
        info = cls.FAMILIES.get(family)
        if info is None or rank < 1:
            return False
        if 'ranks' in info:
            return rank in info['ranks']
        return rank >= info['min_rank']

    @classmethod
    def get_expected_bound(cls, case_id: str, alpha_nonzero: bool) -> int:
        return cls.EXPECTED_BOUNDS[(case_id, alpha_nonzero)]

    @classmethod
    def get_expected_counts(cls, case_id: str) -> Tuple[int, int, int]:
        return cls.EXPECTED_LIMIT_COUNTS[case_id]

    @classmethod
    def log_level_for(cls, verbosity: int) -> str:
        """Map a -v count onto a logging level name."""
        if verbosity >= 2:
            return 'DEBUG'
        if verbosity == 1:
            return 'INFO'
        return cls.LOGGING['level']


def setup_logging(level: str = None) -> None:
    """Route library log records through rich on stderr."""
    level = (level or Config.LOGGING['level']).upper()
    handler = RichHandler(console=Console(stderr=True), show_path=False, markup=False, rich_tracebacks=False)
    handler.setFormatter(logging.Formatter(Config.LOGGING['format'], datefmt=Config.LOGGING['datefmt']))
    root = logging.getLogger()
    root.handlers = [handler]
    root.setLevel(getattr(logging, level, logging.WARNING))


def get_settings_snapshot() -> Dict[str, Any]:
    """Settings that influence presentation only; embedded in saved reports."""
    return {
        'version': Config.VERSION,
        'max_closure_size': Config.DEFAULT_MAX_CLOSURE_SIZE,
        'log_level': Config.LOGGING['level'],
    }
