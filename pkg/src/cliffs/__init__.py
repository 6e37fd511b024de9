"""Cliff words bounded by a range map, their posets and their graded algebras."""

from .words import (
    Affine,
    CliffError,
    Const,
    Periodic,
    RangeMap,
    SizeGuardError,
    classify_range_map,
    format_word,
    is_cliff,
    m_map,
    parse_range_map,
    parse_word,
)
from .posets import FinitePoset, GradedSubset, build_poset
from .families import FamilyKind, avalanches, canyons, cliffs, family, fuss_catalan, hills
from .algebra import CliffAlgebra, Element, generator_counts, freeness_evidence, parse_element

__all__ = [
    "Affine", "CliffError", "Const", "Periodic", "RangeMap", "SizeGuardError",
    "classify_range_map", "format_word", "is_cliff", "m_map", "parse_range_map", "parse_word",
    "FinitePoset", "GradedSubset", "build_poset",
    "FamilyKind", "avalanches", "canyons", "cliffs", "family", "fuss_catalan", "hills",
    "CliffAlgebra", "Element", "generator_counts", "freeness_evidence", "parse_element",
]
