"""Noncommutative algebra: letters, rewrite rules, normal forms."""

from .algebra import (
    Algebra,
    Config,
    InconsistentDerivation,
    MixedConfiguration,
    NCElem,
    NCError,
    NonTerminating,
    OperandContainsPartial,
    RankMismatch,
    StarUndefined,
    algebra,
)
from .letters import Alphabet, UnknownGenerator

__all__ = [
    "Algebra",
    "Alphabet",
    "Config",
    "InconsistentDerivation",
    "MixedConfiguration",
    "NCElem",
    "NCError",
    "NonTerminating",
    "OperandContainsPartial",
    "RankMismatch",
    "StarUndefined",
    "UnknownGenerator",
    "algebra",
]
