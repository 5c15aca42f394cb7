"""Bridge states and the ordering that eliminates them last."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Sequence

from .automata import Efa, Nfa
from .cycles import strongly_connected_components
from .ordering import DMStrategy, OrderingStrategy

__all__ = ["BridgeReport", "bridge_states", "HWStrategy", "hw_strategy"]


@dataclass(frozen=True)
class BridgeReport:
    """Bridge states ordered along the chain from the initial state."""

    bridges: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.bridges)


def _graph(a: Nfa | Efa) -> tuple[dict[int, set[int]], int, frozenset[int]]:
    if isinstance(a, Nfa):
        succ = {q: set() for q in range(a.n)}
        for p, _, q in a.transitions:
            succ[p].add(q)
        return succ, a.initial, a.finals
    return {p: set(row) for p, row in a.succ.items()}, a.initial, a.finals


def _distances(succ: Mapping[int, set[int]], source: int, banned: int | None = None) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        p = queue.popleft()
        for q in sorted(succ[p]):
            if q != banned and q not in dist:
                dist[q] = dist[p] + 1
                queue.append(q)
    return dist


def bridge_states(a: Nfa | Efa) -> BridgeReport:
    """States that are neither initial nor final, separate the initial state
    from every final state, and lie on no cycle other than their own loop.

    ``a`` is expected to be trim.
    """
    succ, initial, finals = _graph(a)
    loopless = {p: [q for q in sorted(row) if q != p] for p, row in succ.items()}
    on_cycle = {v for comp in strongly_connected_components(loopless) if len(comp) > 1 for v in comp}
    dist = _distances(succ, initial)
    found = []
    for q in sorted(succ):
        if q == initial or q in finals or q in on_cycle or q not in dist:
            continue
        reach = _distances(succ, initial, banned=q)
        if finals and not any(f in reach for f in finals):
            found.append(q)
    found.sort(key=lambda q: (dist[q], q))
    return BridgeReport(tuple(found))


class HWStrategy(OrderingStrategy):
    """Defer bridge states; let ``inner`` order everything else.

    Eliminations on different sides of a bridge never touch each other's
    labels, so restricting ``inner`` to the non-bridge states gives the same
    result as running it on each sub-automaton separately.  Bridges are
    found on the automaton seen at the first step, i.e. after any
    normalization, unless ``e`` is given up front.
    """

    name = "hw"

    def __init__(self, e: Efa | None = None, inner: OrderingStrategy | None = None) -> None:
        super().__init__()
        self.inner = inner if inner is not None else DMStrategy()
        self.bridges: tuple[int, ...] | None = None if e is None else bridge_states(e).bridges
        self.flags = self.inner.flags

    def select(self, e: Efa, eliminable: frozenset[int]) -> int:
        if self.bridges is None:
            self.bridges = bridge_states(e).bridges
        rest = eliminable.difference(self.bridges)
        if rest:
            return self.inner.select(e, rest)
        for q in self.bridges:
            if q in eliminable:
                return q
        raise AssertionError("no eliminable state left")


def hw_strategy(e: Efa | None = None, inner: OrderingStrategy | None = None) -> HWStrategy:
    return HWStrategy(e, inner)
