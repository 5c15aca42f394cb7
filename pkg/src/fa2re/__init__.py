"""Finite automaton to regular expression conversion by state elimination,
with elimination-ordering heuristics and an experiment harness."""

from .automata import (
    EMPTY_LANGUAGE,
    CanonicalString,
    Digraph,
    Efa,
    Nfa,
    dfa_accepts,
    nfa_accepts,
    parse_canonical,
    serialize_canonical,
    to_efa,
    trim,
    underlying_digraph,
)
from .elimination import ConversionResult, Variant, convert, eliminate_state, normalize
from .regex import EMPTY, EPSILON, Regex, alphabetic_size, build_simplified, matches, symbol

__version__ = "0.1.0"
