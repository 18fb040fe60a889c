"""Exact verification of intersection properties of 2-transitive groups.

The package computes the derangement-graph spectrum of a finite
2-transitive permutation group from its character table, applies the
ratio and clique-coclique bounds, and certifies strictness through
exact rank computations on the coset-incidence matrix.
"""

from .errors import CapExceeded, CatalogError, TableFormatError
from .library import build_group, catalog_keys, get_group, get_spec
from .pipeline import (
    Caps,
    EkrReport,
    brute_alpha,
    classify,
    classify_many,
    emit_csv,
    emit_json,
    mathieu_reports,
    verify_witness,
)

__version__ = "1.0.0"

__all__ = [
    "Caps",
    "CapExceeded",
    "CatalogError",
    "EkrReport",
    "TableFormatError",
    "brute_alpha",
    "build_group",
    "catalog_keys",
    "classify",
    "classify_many",
    "emit_csv",
    "emit_json",
    "get_group",
    "get_spec",
    "mathieu_reports",
    "verify_witness",
    "__version__",
]
