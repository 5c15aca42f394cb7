"""Automata, extended automata and the canonical ICDFA string codec."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .regex import EMPTY, EPSILON, Regex, symbol, union

__all__ = [
    "Nfa",
    "Efa",
    "Digraph",
    "CanonicalString",
    "EmptyLanguage",
    "EMPTY_LANGUAGE",
    "CanonicalError",
    "parse_canonical",
    "serialize_canonical",
    "canonical_relabeling",
    "is_valid_canonical",
    "trim",
    "to_efa",
    "underlying_digraph",
    "dfa_accepts",
    "nfa_accepts",
    "format_line",
    "parse_line",
]


class CanonicalError(ValueError):
    """Raised for malformed or non-canonical ICDFA strings."""


@dataclass(frozen=True)
class Nfa:
    """States are ``0..n-1``; a transition letter of ``None`` is an empty-word move."""

    n: int
    k: int
    transitions: frozenset[tuple[int, int | None, int]]
    initial: int = 0
    finals: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        if not 0 <= self.initial < self.n:
            raise ValueError(f"initial state {self.initial} out of range for n={self.n}")
        for f in self.finals:
            if not 0 <= f < self.n:
                raise ValueError(f"final state {f} out of range for n={self.n}")
        for p, a, q in self.transitions:
            if not (0 <= p < self.n and 0 <= q < self.n):
                raise ValueError(f"transition {(p, a, q)} references a missing state")
            if a is not None and not 0 <= a < self.k:
                raise ValueError(f"transition {(p, a, q)} uses a letter outside k={self.k}")

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], finals: Iterable[int], initial: int = 0) -> "Nfa":
        """Build a complete DFA from ``table[state][letter] -> state``."""
        n = len(table)
        k = len(table[0]) if n else 0
        trans = frozenset((p, a, q) for p, row in enumerate(table) for a, q in enumerate(row))
        return cls(n, k, trans, initial, frozenset(finals))

    @property
    def is_deterministic(self) -> bool:
        seen = set()
        for p, a, _ in self.transitions:
            if a is None or (p, a) in seen:
                return False
            seen.add((p, a))
        return True

    @property
    def is_complete(self) -> bool:
        return self.is_deterministic and len(self.transitions) == self.n * self.k

    def successors(self) -> list[set[int]]:
        succ: list[set[int]] = [set() for _ in range(self.n)]
        for p, _, q in self.transitions:
            succ[p].add(q)
        return succ

    def table(self) -> list[list[int]]:
        """Transition table of a complete DFA."""
        if not self.is_complete:
            raise ValueError("table() needs a complete DFA")
        t = [[0] * self.k for _ in range(self.n)]
        for p, a, q in self.transitions:
            t[p][a] = q
        return t


class EmptyLanguage:
    """Marker returned by :func:`trim` when no final state is reachable."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "EMPTY_LANGUAGE"

    def __reduce__(self):
        return (EmptyLanguage, ())


EMPTY_LANGUAGE = EmptyLanguage()


class Efa:
    """Extended automaton: each ordered state pair carries a regex label.

    Absent pairs mean the empty set.  State identifiers are arbitrary ints,
    so elimination never renumbers anything.  Instances are treated as
    immutable; :meth:`replace` produces modified copies.
    """

    __slots__ = ("states", "k", "initial", "finals", "succ", "pred")

    def __init__(
        self,
        states: Iterable[int],
        k: int,
        initial: int,
        finals: Iterable[int],
        labels: Mapping[tuple[int, int], Regex] = (),
    ) -> None:
        self.states: tuple[int, ...] = tuple(sorted(set(states)))
        self.k = k
        self.initial = initial
        self.finals: frozenset[int] = frozenset(finals)
        self.succ: dict[int, dict[int, Regex]] = {q: {} for q in self.states}
        self.pred: dict[int, dict[int, Regex]] = {q: {} for q in self.states}
        members = set(self.states)
        if initial not in members or not self.finals <= members:
            raise ValueError("initial and final states must be states of the automaton")
        items = labels.items() if isinstance(labels, Mapping) else labels
        for (p, q), r in items:
            if p not in members or q not in members:
                raise ValueError(f"label on ({p}, {q}) references a missing state")
            if r is EMPTY:
                continue
            self.succ[p][q] = r
            self.pred[q][p] = r

    def label(self, p: int, q: int) -> Regex:
        return self.succ[p].get(q, EMPTY)

    @property
    def labels(self) -> dict[tuple[int, int], Regex]:
        return {(p, q): r for p, row in self.succ.items() for q, r in row.items()}

    def replace(self, **changes) -> "Efa":
        fields = dict(
            states=self.states, k=self.k, initial=self.initial, finals=self.finals, labels=self.labels
        )
        fields.update(changes)
        return Efa(**fields)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Efa):
            return NotImplemented
        return (
            self.states == other.states
            and self.k == other.k
            and self.initial == other.initial
            and self.finals == other.finals
            and self.succ == other.succ
        )

    def __repr__(self) -> str:
        return (
            f"Efa(states={self.states}, initial={self.initial}, finals={sorted(self.finals)}, "
            f"labels={{{', '.join(f'{p}->{q}: {r}' for (p, q), r in sorted(self.labels.items()))}}})"
        )


@dataclass(frozen=True)
class Digraph:
    vertices: tuple[int, ...]
    arcs: frozenset[tuple[int, int]]

    def successors(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in sorted(self.arcs):
            out[u].append(v)
        return out

    def indegree(self, v: int) -> int:
        return sum(1 for _, w in self.arcs if w == v)

    def outdegree(self, v: int) -> int:
        return sum(1 for u, _ in self.arcs if u == v)


# -- canonical strings ---------------------------------------------------------


@dataclass(frozen=True)
class CanonicalString:
    digits: tuple[int, ...]
    n: int
    k: int
    finals: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        problem = _canonical_problem(self.digits, self.n, self.k)
        if problem:
            raise CanonicalError(problem)
        bad = [f for f in self.finals if not 0 <= f < self.n]
        if bad:
            raise CanonicalError(f"final states {bad} out of range for n={self.n}")

    @classmethod
    def from_text(cls, text: str, k: int, finals: Iterable[int] = ()) -> "CanonicalString":
        """Accept either a compact digit string or space-separated numbers."""
        text = text.strip()
        if " " in text or "," in text:
            digits = tuple(int(t) for t in text.replace(",", " ").split())
        else:
            digits = tuple(int(c) for c in text)
        if k <= 0 or len(digits) % k:
            raise CanonicalError(f"{len(digits)} digits do not split into rows of k={k}")
        return cls(digits, len(digits) // k, k, frozenset(finals))

    @property
    def text(self) -> str:
        if self.n <= 10:
            return "".join(str(d) for d in self.digits)
        return " ".join(str(d) for d in self.digits)

    def __str__(self) -> str:
        return self.text


def _canonical_problem(digits: Sequence[int], n: int, k: int) -> str | None:
    if n < 1 or k < 1:
        return f"need n >= 1 and k >= 1, got n={n}, k={k}"
    if len(digits) != n * k:
        return f"expected {n * k} digits for n={n}, k={k}, got {len(digits)}"
    top = 0
    for pos, d in enumerate(digits):
        if not 0 <= d < n:
            return f"state {d} at position {pos} out of range for n={n}"
        if d > top:
            if d != top + 1:
                return f"state {d} at position {pos} appears before state {top + 1}"
            # a new state must be reached from a row already numbered
            if pos >= d * k:
                return f"state {d} is first reached from its own or a later row (position {pos})"
            top = d
    if top != n - 1:
        return f"states {top + 1}..{n - 1} never appear; automaton is not initially connected"
    return None


def is_valid_canonical(digits: Sequence[int], n: int, k: int) -> bool:
    return _canonical_problem(digits, n, k) is None


def parse_canonical(s: CanonicalString) -> Nfa:
    trans = frozenset((q, a, s.digits[q * s.k + a]) for q in range(s.n) for a in range(s.k))
    return Nfa(s.n, s.k, trans, 0, s.finals)


def canonical_relabeling(d: Nfa) -> dict[int, int]:
    """Old-to-new state numbering in first-occurrence (breadth-first) order."""
    if not d.is_complete:
        raise CanonicalError("canonical form needs a complete DFA")
    table = d.table()
    order = {d.initial: 0}
    queue = deque([d.initial])
    while queue:
        p = queue.popleft()
        for q in table[p]:
            if q not in order:
                order[q] = len(order)
                queue.append(q)
    if len(order) != d.n:
        raise CanonicalError(f"only {len(order)} of {d.n} states are reachable from the initial state")
    return order


def serialize_canonical(d: Nfa) -> tuple[CanonicalString, dict[int, int]]:
    """Canonical string of a complete ICDFA plus the old-to-new relabeling."""
    relabel = canonical_relabeling(d)
    table = d.table()
    back = sorted(relabel, key=relabel.__getitem__)
    digits = tuple(relabel[table[p][a]] for p in back for a in range(d.k))
    finals = frozenset(relabel[f] for f in d.finals)
    return CanonicalString(digits, d.n, d.k, finals), relabel


def format_line(s: CanonicalString) -> str:
    """``n k <digits> F=<finals>`` interchange line."""
    return f"{s.n} {s.k} {s.text} F={','.join(str(f) for f in sorted(s.finals))}"


def parse_line(line: str) -> CanonicalString:
    tokens = line.split()
    if len(tokens) < 4 or not tokens[-1].startswith("F="):
        raise CanonicalError(f"malformed automaton line: {line!r}")
    n, k = int(tokens[0]), int(tokens[1])
    body = tokens[2:-1]
    if len(body) == 1 and n <= 10:
        digits = tuple(int(c) for c in body[0])
    else:
        digits = tuple(int(t) for t in body)
    fin = tokens[-1][2:]
    finals = frozenset(int(t) for t in fin.split(",") if t)
    return CanonicalString(digits, n, k, finals)


# -- trimming and conversion ---------------------------------------------------


def _reach(start: Iterable[int], adj: Sequence[Iterable[int]]) -> set[int]:
    seen = set(start)
    stack = list(seen)
    while stack:
        p = stack.pop()
        for q in adj[p]:
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return seen


def trim(a: Nfa) -> tuple[Nfa, dict[int, int]] | EmptyLanguage:
    """Keep only useful states.

    Returns the trimmed automaton and the old-to-new numbering (relative
    order preserved), or :data:`EMPTY_LANGUAGE` when nothing is accepted.
    """
    succ = a.successors()
    pred: list[set[int]] = [set() for _ in range(a.n)]
    for p, _, q in a.transitions:
        pred[q].add(p)
    useful = _reach([a.initial], succ) & _reach(a.finals, pred)
    if a.initial not in useful:
        return EMPTY_LANGUAGE
    keep = sorted(useful)
    renum = {old: new for new, old in enumerate(keep)}
    trans = frozenset(
        (renum[p], x, renum[q]) for p, x, q in a.transitions if p in useful and q in useful
    )
    finals = frozenset(renum[f] for f in a.finals if f in useful)
    return Nfa(len(keep), a.k, trans, renum[a.initial], finals), renum


def to_efa(a: Nfa) -> Efa:
    """Merge parallel transitions into union labels, in increasing letter order."""
    grouped: dict[tuple[int, int], list[int | None]] = {}
    for p, x, q in a.transitions:
        grouped.setdefault((p, q), []).append(x)
    labels = {}
    for pair, letters in grouped.items():
        syms = sorted((x for x in letters if x is not None))
        parts = [EPSILON] if None in letters else []
        parts.extend(symbol(x) for x in syms)
        labels[pair] = union(*parts)
    return Efa(range(a.n), a.k, a.initial, a.finals, labels)


def underlying_digraph(e: Efa | Nfa) -> Digraph:
    if isinstance(e, Nfa):
        return Digraph(tuple(range(e.n)), frozenset((p, q) for p, _, q in e.transitions))
    return Digraph(e.states, frozenset(e.labels))


# -- membership oracles --------------------------------------------------------


def dfa_accepts(d: Nfa, word: Iterable[int]) -> bool:
    delta = {(p, x): q for p, x, q in d.transitions}
    state = d.initial
    for x in word:
        nxt = delta.get((state, x))
        if nxt is None:
            return False
        state = nxt
    return state in d.finals


def _eps_closure(states: set[int], eps: Mapping[int, list[int]]) -> set[int]:
    return _reach(states, _DictAdj(eps))


class _DictAdj:
    def __init__(self, m: Mapping[int, list[int]]) -> None:
        self.m = m

    def __getitem__(self, p: int) -> list[int]:
        return self.m.get(p, [])


def nfa_accepts(a: Nfa, word: Iterable[int]) -> bool:
    eps: dict[int, list[int]] = {}
    delta: dict[tuple[int, int], list[int]] = {}
    for p, x, q in a.transitions:
        if x is None:
            eps.setdefault(p, []).append(q)
        else:
            delta.setdefault((p, x), []).append(q)
    current = _eps_closure({a.initial}, eps)
    for x in word:
        current = _eps_closure({q for p in current for q in delta.get((p, x), ())}, eps)
        if not current:
            return False
    return bool(current & a.finals)


def words(k: int, max_len: int) -> Iterator[tuple[int, ...]]:
    """All words over ``range(k)`` of length at most ``max_len``, shortest first."""
    layer: list[tuple[int, ...]] = [()]
    for _ in range(max_len + 1):
        yield from layer
        layer = [w + (a,) for w in layer for a in range(k)]
