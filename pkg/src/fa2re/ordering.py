"""Elimination-ordering strategies and the exhaustive oracle."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .automata import Efa
from .elimination import (
    Variant,
    eliminable_states,
    eliminate_state,
    prepare,
    terminal_regex,
)

__all__ = [
    "OrderingStrategy",
    "FixedOrderStrategy",
    "RandomOrderStrategy",
    "DMStrategy",
    "OrderExhausted",
    "BruteForceCapExceeded",
    "BruteForceResult",
    "dm_weight",
    "select_dm",
    "fixed_order_strategy",
    "random_order_strategy",
    "dm_strategy",
    "brute_force_optimal",
]


class OrderingStrategy:
    """Chooses the next state to eliminate.

    Subclasses implement :meth:`select`.  ``flags`` collects run annotations
    such as a cycle-enumeration fallback.
    """

    name = "base"

    def __init__(self) -> None:
        self.flags: set[str] = set()

    def select(self, e: Efa, eliminable: frozenset[int]) -> int:
        raise NotImplementedError


class OrderExhausted(ValueError):
    pass


class FixedOrderStrategy(OrderingStrategy):
    name = "s"

    def __init__(self, order: Sequence[int]) -> None:
        super().__init__()
        self.order = tuple(order)

    def select(self, e: Efa, eliminable: frozenset[int]) -> int:
        for q in self.order:
            if q in eliminable:
                return q
        raise OrderExhausted(f"order {self.order} has no entry for eliminable states {sorted(eliminable)}")


class RandomOrderStrategy(OrderingStrategy):
    name = "random"

    def __init__(self, seed: int | None = None) -> None:
        super().__init__()
        self.seed = seed
        self._rng = random.Random(seed)

    def select(self, e: Efa, eliminable: frozenset[int]) -> int:
        return self._rng.choice(sorted(eliminable))


def dm_weight(e: Efa, q: int, count_loops: bool = True) -> int:
    """Delgado-Morais weight of eliminating ``q`` from ``e``.

    ``m`` and ``l`` are the in- and out-degrees of ``q`` in the underlying
    digraph.  With ``count_loops`` a self-loop makes ``q`` adjacent to and
    from itself, so it adds one to both degrees; the loop label itself only
    enters through the last term.  Negative values are clamped to zero.
    """
    ins = [r.size for p, r in e.pred[q].items() if p != q]
    outs = [r.size for s, r in e.succ[q].items() if s != q]
    loop = e.succ[q].get(q)
    m, l = len(ins), len(outs)
    loop_size = 0
    if loop is not None:
        loop_size = loop.size
        if count_loops:
            m += 1
            l += 1
    w = (l - 1) * sum(ins) + (m - 1) * sum(outs) + (m * l - 1) * loop_size
    return max(w, 0)


def select_dm(e: Efa, eliminable: Iterable[int], count_loops: bool = True) -> int:
    """Eliminable state of least weight; ties go to the smallest state."""
    return min(eliminable, key=lambda q: (dm_weight(e, q, count_loops), q))


class DMStrategy(OrderingStrategy):
    name = "dm"

    def __init__(self, count_loops: bool = True) -> None:
        super().__init__()
        self.count_loops = count_loops

    def select(self, e: Efa, eliminable: frozenset[int]) -> int:
        return select_dm(e, eliminable, self.count_loops)


def fixed_order_strategy(order: Sequence[int]) -> FixedOrderStrategy:
    return FixedOrderStrategy(order)


def random_order_strategy(seed: int | None) -> RandomOrderStrategy:
    return RandomOrderStrategy(seed)


def dm_strategy(count_loops: bool = True) -> DMStrategy:
    return DMStrategy(count_loops)


# -- exhaustive search ---------------------------------------------------------


class BruteForceCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class BruteForceResult:
    best_order: tuple[int, ...]
    best_size: int
    worst_order: tuple[int, ...]
    worst_size: int
    evaluated: int


def brute_force_optimal(e: Efa, variant: Variant | str, cap: int = 8) -> BruteForceResult:
    """Try every elimination order; report the smallest and largest results.

    Orders are explored depth first so each common prefix is eliminated
    once.  Ties keep the lexicographically first order.
    """
    variant = Variant.parse(variant)
    start = prepare(e, variant)
    todo = sorted(eliminable_states(start))
    if len(todo) > cap:
        raise BruteForceCapExceeded(f"{len(todo)} eliminable states exceed the cap of {cap}")
    best: list = [None, None]
    worst: list = [None, None]
    count = 0

    def walk(cur: Efa, left: list[int], prefix: tuple[int, ...]) -> None:
        nonlocal count
        if not left:
            count += 1
            size = terminal_regex(cur).size
            if best[0] is None or size < best[0]:
                best[:] = [size, prefix]
            if worst[0] is None or size > worst[0]:
                worst[:] = [size, prefix]
            return
        for i, q in enumerate(left):
            walk(eliminate_state(cur, q), left[:i] + left[i + 1 :], prefix + (q,))

    walk(start, todo, ())
    return BruteForceResult(best[1], best[0], worst[1], worst[0], count)
