"""Elementary cycles of the underlying digraph and the cycle-count heuristics.

Cycles are enumerated with Johnson's circuit search.  Loops count as
cycles of length one; parallel transitions were already merged into a
single arc, so they never multiply a count.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Iterator, Mapping, Sequence

from .automata import Digraph, Efa, underlying_digraph
from .ordering import OrderingStrategy, select_dm

__all__ = [
    "CycleSet",
    "CycleCapExceeded",
    "DEFAULT_CYCLE_CAP",
    "strongly_connected_components",
    "iter_cycles",
    "elementary_cycles",
    "cycle_weights",
    "cd_weights",
    "CycleStrategy",
    "cs_strategy",
    "cd_strategy",
    "cc_strategy",
]

DEFAULT_CYCLE_CAP = 10**6


class CycleCapExceeded(RuntimeError):
    def __init__(self, count: int, cap: int) -> None:
        super().__init__(f"more than {cap} elementary cycles (stopped at {count})")
        self.count = count
        self.cap = cap


@dataclass(frozen=True)
class CycleSet:
    cycles: tuple[tuple[int, ...], ...]
    per_state_count: Mapping[int, int]


def strongly_connected_components(adj: Mapping[int, Sequence[int]]) -> list[list[int]]:
    """Tarjan's algorithm, iterative."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in adj:
        if root in index:
            continue
        work = [(root, iter(adj[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(adj[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def _unblock(node: int, blocked: set[int], memo: dict[int, set[int]]) -> None:
    todo = [node]
    while todo:
        v = todo.pop()
        if v in blocked:
            blocked.discard(v)
            todo.extend(memo[v])
            memo[v].clear()


def iter_cycles(adj: Mapping[int, Sequence[int]]) -> Iterator[tuple[int, ...]]:
    """Yield each elementary cycle once, starting at its smallest vertex."""
    for v in sorted(adj):
        if v in adj[v]:
            yield (v,)
    for start in sorted(adj):
        sub = {v: [w for w in adj[v] if w >= start and w != v] for v in adj if v >= start}
        comp = next(c for c in strongly_connected_components(sub) if start in c)
        if len(comp) < 2:
            continue
        members = set(comp)
        g = {v: [w for w in sub[v] if w in members] for v in comp}
        path = [start]
        blocked = {start}
        closed: set[int] = set()
        memo: dict[int, set[int]] = defaultdict(set)
        frames = [(start, list(reversed(g[start])))]
        while frames:
            v, nbrs = frames[-1]
            if nbrs:
                w = nbrs.pop()
                if w == start:
                    yield tuple(path)
                    closed.update(path)
                elif w not in blocked:
                    path.append(w)
                    frames.append((w, list(reversed(g[w]))))
                    closed.discard(w)
                    blocked.add(w)
                    continue
            if not nbrs:
                if v in closed:
                    _unblock(v, blocked, memo)
                else:
                    for w in g[v]:
                        memo[w].add(v)
                frames.pop()
                path.pop()


def elementary_cycles(d: Digraph | Efa, cap: int = DEFAULT_CYCLE_CAP) -> CycleSet:
    if isinstance(d, Efa):
        d = underlying_digraph(d)
    cycles = []
    counts = dict.fromkeys(d.vertices, 0)
    for c in iter_cycles(d.successors()):
        cycles.append(c)
        if len(cycles) > cap:
            raise CycleCapExceeded(len(cycles), cap)
        for v in c:
            counts[v] += 1
    return CycleSet(tuple(cycles), counts)


def cycle_weights(
    e: Efa, weigh: Callable[[tuple[int, ...]], int], cap: int = DEFAULT_CYCLE_CAP
) -> dict[int, int]:
    """Per-state sum of ``weigh(cycle)`` over the cycles through each state."""
    adj = {p: sorted(row) for p, row in e.succ.items()}
    totals = dict.fromkeys(e.states, 0)
    for n, c in enumerate(iter_cycles(adj), 1):
        if n > cap:
            raise CycleCapExceeded(n, cap)
        w = weigh(c)
        for v in c:
            totals[v] += w
    return totals


def cd_weights(e: Efa, cap: int = DEFAULT_CYCLE_CAP) -> dict[int, int]:
    """Each cycle adds the alphabetic size of its labels to every state on it."""

    def label_size(c: tuple[int, ...]) -> int:
        return sum(e.succ[p][c[(i + 1) % len(c)]].size for i, p in enumerate(c))

    return cycle_weights(e, label_size, cap)


def _count(c: tuple[int, ...]) -> int:
    return 1


class CycleStrategy(OrderingStrategy):
    """Eliminate the state lying on the fewest (or lightest) cycles.

    ``dynamic`` recomputes the weights on the current automaton before every
    choice; otherwise they are computed once on the automaton handed to the
    constructor.  ``weighted`` sums label sizes along each cycle instead of
    counting it once.  If enumeration hits the cap the strategy switches to
    DM for the rest of the run and records ``cycle_cap`` in ``flags``.
    """

    def __init__(self, e: Efa, dynamic: bool, weighted: bool, cap: int = DEFAULT_CYCLE_CAP, name: str = "") -> None:
        super().__init__()
        self.dynamic = dynamic
        self.weighted = weighted
        self.cap = cap
        self.name = name or ("c" + ("d" if dynamic else "s") + ("w" if weighted else ""))
        self._static = None if dynamic else self._weights(e)

    def _weights(self, e: Efa) -> dict[int, int] | None:
        try:
            if self.weighted:
                return cd_weights(e, self.cap)
            return cycle_weights(e, _count, self.cap)
        except CycleCapExceeded:
            self.flags.add("cycle_cap")
            return None

    def select(self, e: Efa, eliminable: frozenset[int]) -> int:
        weights = self._weights(e) if self.dynamic and "cycle_cap" not in self.flags else self._static
        if weights is None:
            return select_dm(e, eliminable)
        return min(eliminable, key=lambda q: (weights.get(q, 0), q))


def cs_strategy(e: Efa, cap: int = DEFAULT_CYCLE_CAP) -> CycleStrategy:
    """Static cycle counts of ``e``, ascending; ties to the smallest state."""
    return CycleStrategy(e, dynamic=False, weighted=False, cap=cap, name="cs")


def cd_strategy(e: Efa | None = None, cap: int = DEFAULT_CYCLE_CAP) -> CycleStrategy:
    """Label-size-weighted cycle totals, recomputed after every elimination."""
    return CycleStrategy(e, dynamic=True, weighted=True, cap=cap, name="cd")


def cc_strategy(e: Efa | None = None, cap: int = DEFAULT_CYCLE_CAP) -> CycleStrategy:
    """Plain cycle counts, recomputed after every elimination."""
    return CycleStrategy(e, dynamic=True, weighted=False, cap=cap, name="cc")
