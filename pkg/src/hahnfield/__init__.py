"""Exact asymptotic couples and Hahn-series differential fields at finite rank."""

__version__ = "0.1.0"

from .errors import (
    DomainError,
    HahnFieldError,
    InconclusiveError,
    InconsistencyError,
    PreconditionError,
    StructuralError,
)
from .groups import GroupElement, arch_class, class_compare, compare, linear_combine
from .couples import (
    AsymptoticCouple,
    check_hahn_type,
    check_hardy_type,
    check_small_derivation,
    example_couple,
    extend_psi,
    max_psi,
    psi,
    validate_axioms,
)
from .hahn import HahnSeries, TruncationBudget, dominance, field_compare, invert, truncate
from .derivation import DerivationContext, check_hfield, extract_couple, leading_term_law, power_dagger
from .towers import ValuationTower, compose_place, coarse_value, residue_fine, verify_tower
from .loghyper import LogMonomial, LogSeries, h_map, oracle_diff, verify_isomorphism

__all__ = [name for name in dir() if not name.startswith("_")]
