"""State elimination, with and without prior normalization."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .automata import Efa, EmptyLanguage
from .regex import EMPTY, EPSILON, Regex, concat, star, union

if TYPE_CHECKING:
    from .ordering import OrderingStrategy

__all__ = [
    "Variant",
    "ConversionResult",
    "ProtectedStateError",
    "normalize",
    "normalize_always",
    "add_single_final",
    "eliminate_state",
    "prepare",
    "eliminable_states",
    "terminal_regex",
    "convert",
    "convert_in_order",
]


class Variant(enum.Enum):
    NORMALIZED = "sea"
    WITHOUT_NORMALIZATION = "seawn"

    @classmethod
    def parse(cls, text: str | "Variant") -> "Variant":
        if isinstance(text, Variant):
            return text
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"unknown variant {text!r}; expected 'sea' or 'seawn'") from None


class ProtectedStateError(ValueError):
    pass


@dataclass(frozen=True)
class ConversionResult:
    regex: Regex
    order: tuple[int, ...]
    variant: Variant

    @property
    def size(self) -> int:
        return self.regex.size


def _fresh(e: Efa) -> int:
    return max(e.states) + 1


def add_single_final(e: Efa) -> Efa:
    """Route every final state to a new final state through empty-word labels."""
    f = _fresh(e)
    labels = e.labels
    for q in e.finals:
        labels[(q, f)] = EPSILON
    return Efa(e.states + (f,), e.k, e.initial, {f}, labels)


def normalize(e: Efa) -> Efa:
    """New initial only if the initial has incoming labels; new final only if needed."""
    if e.pred[e.initial]:
        i = _fresh(e)
        labels = e.labels
        labels[(i, e.initial)] = EPSILON
        e = Efa(e.states + (i,), e.k, i, e.finals, labels)
    if len(e.finals) > 1 or any(e.succ[q] for q in e.finals):
        e = add_single_final(e)
    return e


def normalize_always(e: Efa) -> Efa:
    """Add a fresh initial and a fresh single final state unconditionally."""
    i = _fresh(e)
    labels = e.labels
    labels[(i, e.initial)] = EPSILON
    return add_single_final(Efa(e.states + (i,), e.k, i, e.finals, labels))


def eliminate_state(e: Efa, q: int) -> Efa:
    """Remove ``q``, rerouting every path ``p -> q -> r`` through a direct label."""
    if q not in e.succ:
        raise ValueError(f"state {q} is not in the automaton")
    if q == e.initial or q in e.finals:
        raise ProtectedStateError(f"state {q} is initial or final and cannot be eliminated")
    loop = star(e.succ[q].get(q, EMPTY))
    ins = [(p, r) for p, r in e.pred[q].items() if p != q]
    outs = [(s, r) for s, r in e.succ[q].items() if s != q]

    succ = {p: dict(row) for p, row in e.succ.items() if p != q}
    for row in succ.values():
        row.pop(q, None)
    for p, into in ins:
        row = succ[p]
        for s, out in outs:
            new = union(row.get(s, EMPTY), concat(into, loop, out))
            if new is not EMPTY:
                row[s] = new

    out = Efa.__new__(Efa)
    out.states = tuple(p for p in e.states if p != q)
    out.k, out.initial, out.finals = e.k, e.initial, e.finals
    out.succ = succ
    pred: dict[int, dict[int, Regex]] = {p: {} for p in out.states}
    for p, row in succ.items():
        for s, r in row.items():
            pred[s][p] = r
    out.pred = pred
    return out


def prepare(e: Efa, variant: Variant) -> Efa:
    """Apply the preprocessing the variant calls for."""
    if variant is Variant.NORMALIZED:
        return normalize(e)
    if len(e.finals) > 1:
        return add_single_final(e)
    return e


def eliminable_states(e: Efa) -> frozenset[int]:
    return frozenset(q for q in e.states if q != e.initial and q not in e.finals)


def terminal_regex(e: Efa) -> Regex:
    """Read the regex off an automaton reduced to its initial and final states."""
    i = e.initial
    if not e.finals:
        return EMPTY
    (f,) = e.finals
    if i == f:
        return star(e.label(i, i))
    b1 = star(e.label(i, i))
    a1 = e.label(i, f)
    return concat(b1, a1, star(union(e.label(f, f), concat(e.label(f, i), b1, a1))))


def convert(
    e: Efa | EmptyLanguage,
    strategy: "OrderingStrategy",
    variant: Variant | str = Variant.WITHOUT_NORMALIZATION,
) -> ConversionResult:
    """Convert a trim extended automaton to a regex.

    The strategy is consulted once per step with the current automaton and
    the states still eliminable.
    """
    variant = Variant.parse(variant)
    if isinstance(e, EmptyLanguage) or not e.finals:
        return ConversionResult(EMPTY, (), variant)
    cur = prepare(e, variant)
    remaining = set(eliminable_states(cur))
    order = []
    while remaining:
        q = strategy.select(cur, frozenset(remaining))
        if q not in remaining:
            raise ValueError(f"strategy selected non-eliminable state {q}")
        cur = eliminate_state(cur, q)
        remaining.discard(q)
        order.append(q)
    return ConversionResult(terminal_regex(cur), tuple(order), variant)


def convert_in_order(e: Efa, order, variant: Variant | str) -> ConversionResult:
    """Eliminate exactly the given states, in order, then extract the regex."""
    from .ordering import fixed_order_strategy

    return convert(e, fixed_order_strategy(order), variant)

