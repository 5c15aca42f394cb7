"""Reference implementations used only by the tests.

None of these share code with the package: regex membership goes through
Python's ``re``, automata are simulated with plain subset tracking, and
cycles and canonical strings are found by exhaustive enumeration.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from typing import Iterable, Sequence

# raw (unsimplified) regex trees: ("empty",), ("eps",), ("sym", i),
# ("union", [parts]), ("concat", [parts]), ("star", inner)


def raw_pattern(t) -> str:
    kind = t[0]
    if kind == "empty":
        return "(?!)"
    if kind == "eps":
        return ""
    if kind == "sym":
        return chr(ord("a") + t[1])
    if kind == "union":
        return "(?:" + "|".join(raw_pattern(p) for p in t[1]) + ")"
    if kind == "concat":
        return "(?:" + "".join(raw_pattern(p) for p in t[1]) + ")"
    return "(?:" + raw_pattern(t[1]) + ")*"


def raw_size(t) -> int:
    kind = t[0]
    if kind == "sym":
        return 1
    if kind in ("union", "concat"):
        return sum(raw_size(p) for p in t[1])
    if kind == "star":
        return raw_size(t[1])
    return 0


def regex_pattern(r) -> str:
    """Translate a package Regex into an ``re`` pattern without using its matcher."""
    kind = r.kind
    if kind == "empty":
        return "(?!)"
    if kind == "eps":
        return ""
    if kind == "sym":
        return chr(ord("a") + r.args)
    if kind == "union":
        return "(?:" + "|".join(regex_pattern(p) for p in r.parts) + ")"
    if kind == "concat":
        return "(?:" + "".join(regex_pattern(p) for p in r.parts) + ")"
    return "(?:" + regex_pattern(r.parts[0]) + ")*"


def re_accepts(pattern: str, word: Sequence[int]) -> bool:
    return re.fullmatch(pattern, "".join(chr(ord("a") + c) for c in word)) is not None


def expanded_size(r) -> int:
    """Alphabetic size by walking the tree with no sharing and no cache."""
    if r.kind == "sym":
        return 1
    if r.kind in ("union", "concat", "star"):
        return sum(expanded_size(p) for p in r.parts)
    return 0


def all_words(k: int, max_len: int) -> list[tuple[int, ...]]:
    out = []
    for n in range(max_len + 1):
        out.extend(itertools.product(range(k), repeat=n))
    return out


def simulate(n: int, transitions: Iterable[tuple[int, int | None, int]], initial: int, finals, word) -> bool:
    """Subset simulation of an automaton given by raw triples (None is epsilon)."""
    trans = list(transitions)

    def close(states: set[int]) -> set[int]:
        todo = list(states)
        while todo:
            p = todo.pop()
            for a, b, c in trans:
                if a == p and b is None and c not in states:
                    states.add(c)
                    todo.append(c)
        return states

    cur = close({initial})
    for sym in word:
        cur = close({c for a, b, c in trans if a in cur and b == sym})
    return bool(cur & set(finals))


def bfs_canonical(table: Sequence[Sequence[int]]) -> tuple[int, ...] | None:
    """Canonical digits of a complete table with initial 0, or None when
    some state is unreachable."""
    order = {0: 0}
    queue = deque([0])
    while queue:
        p = queue.popleft()
        for q in table[p]:
            if q not in order:
                order[q] = len(order)
                queue.append(q)
    if len(order) != len(table):
        return None
    back = sorted(order, key=order.get)
    return tuple(order[table[p][a]] for p in back for a in range(len(table[0])))


def canonical_strings(n: int, k: int) -> list[tuple[int, ...]]:
    """Every canonical string for (n, k): those equal to their own relabeling."""
    found = []
    for digits in itertools.product(range(n), repeat=n * k):
        table = [digits[p * k : (p + 1) * k] for p in range(n)]
        if bfs_canonical(table) == digits:
            found.append(digits)
    return found


def brute_cycles(vertices: Sequence[int], arcs: set[tuple[int, int]]) -> set[tuple[int, ...]]:
    """Elementary cycles as vertex tuples starting at their smallest vertex."""
    found = set()
    vs = sorted(vertices)
    for size in range(1, len(vs) + 1):
        for subset in itertools.combinations(vs, size):
            first, rest = subset[0], subset[1:]
            for perm in itertools.permutations(rest):
                cyc = (first,) + perm
                if all((cyc[i], cyc[(i + 1) % size]) in arcs for i in range(size)):
                    found.add(cyc)
    return found


def simple_paths(succ: dict[int, set[int]], src: int, dst: int) -> list[list[int]]:
    paths = []
    stack = [(src, [src])]
    while stack:
        v, path = stack.pop()
        if v == dst:
            paths.append(path)
            continue
        for w in succ[v]:
            if w not in path:
                stack.append((w, path + [w]))
    return paths
