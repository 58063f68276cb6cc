"""
Core module for the Clifford root-system verifier.

Root-set engine, catalog, weight configurations, Gram search and the claim verifier.
"""

from .rootsys import RootSet, closure, components, is_admissible, is_root_system, normalize, reflect
from .catalog import build, canonical_name, identify
from .cliff_weights import (
    WeightConfig, WeightShape, build_weights, clifford_info, spin_weight_signs, valuation_class,
    weight_config_from_dict,
)
from .gram_engine import canonicalize, classify_halfsign_q8, enumerate_p1_grams, prop34_bound
from .verifier import (
    BOUND_CASES, CASE_IDS, SUITES, Report, Status, exclude_r14, rank_bound_table, verify_all, verify_bounds,
    verify_gram, verify_limit_case,
)

__all__ = [
    'RootSet', 'closure', 'components', 'is_admissible', 'is_root_system', 'normalize', 'reflect',
    'build', 'canonical_name', 'identify',
    'WeightConfig', 'WeightShape', 'build_weights', 'clifford_info', 'spin_weight_signs', 'valuation_class',
    'weight_config_from_dict',
    'canonicalize', 'classify_halfsign_q8', 'enumerate_p1_grams', 'prop34_bound',
    'BOUND_CASES', 'CASE_IDS', 'SUITES', 'Report', 'Status', 'exclude_r14', 'rank_bound_table', 'verify_all',
    'verify_bounds', 'verify_gram', 'verify_limit_case',
]
