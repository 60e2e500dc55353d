"""Calibrated homology computations, caching, and verification laws."""

from .cache import (
    CACHE_VERSION,
    CacheConflictError,
    cache_path,
    cache_root,
    coeff_tag,
)
from .engine import (
    CALIBRATION_GRID,
    CalibrationError,
    CalibrationResult,
    HomologyTable,
    artinB_betti,
    artinB_homology,
    artinB_reduced_betti,
    artinB_trivial_betti,
    bddn_homology,
    braid_trivial_homology,
    braid_twisted_homology,
    calibrate,
    calibrate_t_variant,
    compute_table,
    parse_coeff,
    thread_count,
)
from .laws import (
    Report,
    first_stable_rows,
    stable_bound,
    verify_covering_iso,
    verify_stability,
    verify_torsion_law,
    verify_uct,
    verify_unstable_free,
)
from .limits import DEFAULT_BIT_BUDGET, ResourceLimitError, bit_budget

__all__ = [
    "CACHE_VERSION",
    "CALIBRATION_GRID",
    "CacheConflictError",
    "CalibrationError",
    "CalibrationResult",
    "DEFAULT_BIT_BUDGET",
    "HomologyTable",
    "Report",
    "ResourceLimitError",
    "artinB_betti",
    "artinB_homology",
    "artinB_reduced_betti",
    "artinB_trivial_betti",
    "bddn_homology",
    "bit_budget",
    "braid_trivial_homology",
    "braid_twisted_homology",
    "cache_path",
    "cache_root",
    "calibrate",
    "calibrate_t_variant",
    "coeff_tag",
    "compute_table",
    "first_stable_rows",
    "parse_coeff",
    "stable_bound",
    "thread_count",
    "verify_covering_iso",
    "verify_stability",
    "verify_torsion_law",
    "verify_uct",
    "verify_unstable_free",
]
