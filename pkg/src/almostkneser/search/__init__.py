"""Exact search, canonical forms and the classification checks."""

from .canon import CanonicalForm, are_isomorphic, canonicalize
from .engine import (
    SearchConfig,
    SearchRefused,
    SearchResult,
    brute_force_max,
    max_family,
)
from .verify import (
    Theorem3Verdict,
    check_lemma41,
    extend_to_maximal,
    theorem3_grid,
    verify_theorem3,
)

__all__ = [
    "CanonicalForm",
    "SearchConfig",
    "SearchRefused",
    "SearchResult",
    "Theorem3Verdict",
    "are_isomorphic",
    "brute_force_max",
    "canonicalize",
    "check_lemma41",
    "extend_to_maximal",
    "max_family",
    "theorem3_grid",
    "verify_theorem3",
]
