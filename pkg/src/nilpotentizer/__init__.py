"""Finite-group engine for nilpotentizer computations and verification suites."""

__version__ = "0.1.0"

from .groups import (
    DirectProductResult,
    ElementSet,
    Group,
    GroupBuildError,
    Quotient,
    Subgroup,
    build_group,
    center,
    centralizer,
    centralizer_of_set,
    commutator,
    direct_product,
    element_order,
    generated_subgroup,
    is_maximal_subgroup,
    is_normal,
    left_normed_commutator,
    quotient,
)
from .nilset import (
    InfeasibleError,
    NilProfile,
    commutator_condition,
    is_n_group,
    is_nil_subgroup,
    nil_element,
    nil_generated,
    nil_group,
    nil_profile,
)
from .structure import (
    SeriesReport,
    StructureProfile,
    derived_series,
    extend_to_maximal_nilpotent,
    fitting_subgroup,
    hypercenter,
    is_nilpotent,
    is_nilpotent_by_sylow,
    is_solvable,
    is_weakly_nilpotent,
    lower_central_series,
    nilpotency_class,
    structure_profile,
    sylow_count,
    sylow_subgroup,
    upper_central_series,
)
from .catalog import CorpusEntry, ProfileStore, StoreError, builtin_corpus, ingest, psl2
from .verdicts import SuiteVerdict

__all__ = [
    "Group", "ElementSet", "Subgroup", "Quotient", "DirectProductResult",
    "GroupBuildError", "InfeasibleError", "StoreError",
    "build_group", "element_order", "commutator", "left_normed_commutator",
    "generated_subgroup", "centralizer", "centralizer_of_set", "center",
    "is_normal", "quotient", "is_maximal_subgroup", "direct_product",
    "SeriesReport", "StructureProfile", "lower_central_series", "derived_series",
    "upper_central_series", "hypercenter", "is_nilpotent", "is_nilpotent_by_sylow",
    "nilpotency_class", "is_solvable", "sylow_subgroup", "sylow_count",
    "fitting_subgroup", "extend_to_maximal_nilpotent", "is_weakly_nilpotent",
    "structure_profile",
    "NilProfile", "nil_element", "nil_group", "is_nil_subgroup", "is_n_group",
    "nil_generated", "nil_profile", "commutator_condition",
    "CorpusEntry", "ProfileStore", "builtin_corpus", "ingest", "psl2",
    "SuiteVerdict",
]
