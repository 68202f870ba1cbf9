"""Exact seed mutation, Laurent expansions and exchange-graph exploration for
cluster algebras of geometric type."""

from .laurent import LaurentPoly, NotDivisible, denominator_vector, exact_div, is_positive
from .matrix import ExchangeMatrix, find_skew_symmetrizer, is_sign_skew_symmetric, mutate
from .seed import LaurentViolation, Seed, apply_sequence, exchange_relation, initial_seed, mutate_seed
from .explorer import canonical_key, explore, seeds_equivalent

__all__ = [
    "LaurentPoly",
    "NotDivisible",
    "denominator_vector",
    "exact_div",
    "is_positive",
    "ExchangeMatrix",
    "find_skew_symmetrizer",
    "is_sign_skew_symmetric",
    "mutate",
    "LaurentViolation",
    "Seed",
    "apply_sequence",
    "exchange_relation",
    "initial_seed",
    "mutate_seed",
    "canonical_key",
    "explore",
    "seeds_equivalent",
]

__version__ = "0.1.0"
