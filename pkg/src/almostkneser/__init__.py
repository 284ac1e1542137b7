"""Almost intersecting families of k-subsets: exact predicates, bound
formulas, explicit constructions and an exact maximum-family search."""

from .core import (
    Family,
    FamilyFormatError,
    KSubset,
    ParameterError,
    Params,
    apply_permutation,
    enumerate_k_subsets,
    intersection_size,
    load_family,
    save_family,
)
from .formulas import eval_f, eval_g, eval_h, sweep_all
from .predicates import (
    CoverResult,
    DefectReport,
    Outcome,
    covering_number,
    defect_set,
    is_s_almost_t_intersecting,
    is_t_intersecting,
    kneser_edge_check,
    restrict,
)

__version__ = "0.1.0"

__all__ = [
    "CoverResult",
    "DefectReport",
    "Family",
    "FamilyFormatError",
    "KSubset",
    "Outcome",
    "ParameterError",
    "Params",
    "apply_permutation",
    "covering_number",
    "defect_set",
    "enumerate_k_subsets",
    "eval_f",
    "eval_g",
    "eval_h",
    "intersection_size",
    "is_s_almost_t_intersecting",
    "is_t_intersecting",
    "kneser_edge_check",
    "load_family",
    "restrict",
    "save_family",
    "sweep_all",
    "__version__",
]
