"""Strategy registry shared by the harness and the command line."""

from __future__ import annotations

from .automata import Efa, EmptyLanguage
from .bridges import hw_strategy
from .cycles import cc_strategy, cd_strategy, cs_strategy
from .elimination import ConversionResult, Variant, convert
from .ordering import (
    OrderingStrategy,
    brute_force_optimal,
    dm_strategy,
    fixed_order_strategy,
    random_order_strategy,
)
from .regex import EMPTY

__all__ = ["STRATEGY_NAMES", "make_strategy", "run_named"]

# "bf" is the exhaustive oracle, not a step-wise strategy
STRATEGY_NAMES = ("s", "random", "dm", "cs", "cd", "cc", "hw", "bf")


def make_strategy(name: str, e: Efa, seed: int | None = None) -> OrderingStrategy:
    if name == "s":
        # canonical numbering is the order states occur in the canonical string
        return fixed_order_strategy(sorted(e.states))
    if name == "random":
        return random_order_strategy(seed)
    if name == "dm":
        return dm_strategy()
    if name == "cs":
        return cs_strategy(e)
    if name == "cd":
        return cd_strategy(e)
    if name == "cc":
        return cc_strategy(e)
    if name == "hw":
        return hw_strategy()
    raise ValueError(f"unknown heuristic {name!r}; choose from {', '.join(STRATEGY_NAMES)}")


def run_named(
    e: Efa | EmptyLanguage, name: str, variant: Variant | str, seed: int | None = None, bf_cap: int = 8
) -> tuple[ConversionResult, frozenset[str]]:
    """Convert with a named heuristic; returns the result and any run flags."""
    variant = Variant.parse(variant)
    if isinstance(e, EmptyLanguage):
        return ConversionResult(EMPTY, (), variant), frozenset({"degenerate"})
    if name == "bf":
        best = brute_force_optimal(e, variant, cap=bf_cap)
        return convert(e, fixed_order_strategy(best.best_order), variant), frozenset()
    strategy = make_strategy(name, e, seed)
    result = convert(e, strategy, variant)
    return result, frozenset(strategy.flags)
