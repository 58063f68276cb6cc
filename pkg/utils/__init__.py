"""
Utility modules for the Clifford root-system verifier.

Exact arithmetic, configuration, errors and JSON helpers.
"""

from .config import Config, setup_logging
from .errors import RootToolError
from .json_io import dumps, load_document, rootset_from_dict, rootset_to_dict

__all__ = ['Config', 'setup_logging', 'RootToolError', 'dumps', 'load_document', 'rootset_from_dict',
           'rootset_to_dict']
