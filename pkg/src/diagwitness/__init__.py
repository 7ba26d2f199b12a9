"""Explicit identity witnesses in the semigroup generated by a matrix and the diagonal group."""
from .matrix import Diag, Gen, Matrix, Word, evaluate_word, invert_matrix, minor
from .nets import NetPattern, pattern_of, validate_net
from .oracle import closure_bfs, exhaustive_check, minor_scan
from .parsing import ParseError, parse_matrix, parse_ring, parse_word
from .rings import (
    ExtensionField,
    IntegerMod,
    MatrixRing,
    PolyQuotient,
    PrimeField,
    Product,
    RationalQuaternions,
    Rationals,
)
from .witness import SearchConfig, WitnessReport, witness

__all__ = [
    "Diag", "Gen", "Matrix", "Word", "evaluate_word", "invert_matrix", "minor",
    "NetPattern", "pattern_of", "validate_net",
    "closure_bfs", "exhaustive_check", "minor_scan",
    "ParseError", "parse_matrix", "parse_ring", "parse_word",
    "ExtensionField", "IntegerMod", "MatrixRing", "PolyQuotient", "PrimeField", "Product",
    "RationalQuaternions", "Rationals",
    "SearchConfig", "WitnessReport", "witness",
]
