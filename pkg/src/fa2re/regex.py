"""Regular expressions as hash-consed immutable trees.

Every node is interned: two structurally equal expressions are the same
object, so equality is identity and subterms are shared freely.  The
alphabetic size is cached on each node and computed compositionally, which
keeps it cheap even when the expanded tree would be astronomically large.

Only the smart constructors :func:`union`, :func:`concat` and :func:`star`
should be used to build compound nodes.  They apply the unit/zero laws of
the Kleene algebra, flatten nested unions and concatenations, and drop
duplicate union members; nothing else.
"""

from __future__ import annotations

import string
import weakref
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Regex",
    "EMPTY",
    "EPSILON",
    "symbol",
    "union",
    "concat",
    "star",
    "build_simplified",
    "alphabetic_size",
    "matches",
    "derivative",
    "to_string",
    "parse",
    "symbol_name",
]

# node kinds
EMPTY_KIND = "empty"
EPS_KIND = "eps"
SYM_KIND = "sym"
UNION_KIND = "union"
CONCAT_KIND = "concat"
STAR_KIND = "star"

_table: "weakref.WeakValueDictionary[tuple, Regex]" = weakref.WeakValueDictionary()


class Regex:
    """An interned regular-expression node.

    ``kind`` is one of ``empty``, ``eps``, ``sym``, ``union``, ``concat``,
    ``star``.  ``args`` holds the symbol index, the tuple of parts, or the
    starred operand, depending on the kind.
    """

    __slots__ = ("kind", "args", "size", "nullable", "_derivs", "__weakref__")

    kind: str
    args: object
    size: int
    nullable: bool

    def __new__(cls, kind: str, args: object = None) -> "Regex":
        key = (kind, args)
        node = _table.get(key)
        if node is not None:
            return node
        node = object.__new__(cls)
        node.kind = kind
        node.args = args
        node._derivs = {}
        if kind == SYM_KIND:
            node.size, node.nullable = 1, False
        elif kind == UNION_KIND:
            node.size = sum(p.size for p in args)
            node.nullable = any(p.nullable for p in args)
        elif kind == CONCAT_KIND:
            node.size = sum(p.size for p in args)
            node.nullable = all(p.nullable for p in args)
        elif kind == STAR_KIND:
            node.size, node.nullable = args.size, True
        else:
            node.size, node.nullable = 0, kind == EPS_KIND
        return _table.setdefault(key, node)

    def __reduce__(self):
        # re-intern on unpickling (worker processes)
        return (Regex, (self.kind, self.args))

    @property
    def parts(self) -> tuple["Regex", ...]:
        if self.kind in (UNION_KIND, CONCAT_KIND):
            return self.args
        if self.kind == STAR_KIND:
            return (self.args,)
        return ()

    def __repr__(self) -> str:
        if self.size <= 200:
            return f"Regex({to_string(self)!r})"
        return f"<Regex {self.kind} size={self.size}>"

    def __str__(self) -> str:
        return to_string(self)


EMPTY = Regex(EMPTY_KIND)
EPSILON = Regex(EPS_KIND)


def symbol(index: int) -> Regex:
    if index < 0:
        raise ValueError(f"symbol index must be non-negative, got {index}")
    return Regex(SYM_KIND, index)


def union(*operands: Regex) -> Regex:
    parts: list[Regex] = []
    seen: set[int] = set()
    for r in operands:
        if r is EMPTY:
            continue
        for p in r.args if r.kind == UNION_KIND else (r,):
            if id(p) not in seen:
                seen.add(id(p))
                parts.append(p)
    if not parts:
        return EMPTY
    if len(parts) == 1:
        return parts[0]
    return Regex(UNION_KIND, tuple(parts))


def concat(*operands: Regex) -> Regex:
    parts: list[Regex] = []
    for r in operands:
        if r is EMPTY:
            return EMPTY
        if r is EPSILON:
            continue
        if r.kind == CONCAT_KIND:
            parts.extend(r.args)
        else:
            parts.append(r)
    if not parts:
        return EPSILON
    if len(parts) == 1:
        return parts[0]
    return Regex(CONCAT_KIND, tuple(parts))


def star(r: Regex) -> Regex:
    if r is EMPTY or r is EPSILON:
        return EPSILON
    return Regex(STAR_KIND, r)


def build_simplified(kind: str, operands: Sequence[Regex]) -> Regex:
    """Combine ``operands`` with ``kind`` (``union``, ``concat`` or ``star``)."""
    if not operands:
        raise ValueError("build_simplified needs at least one operand")
    if kind == UNION_KIND:
        return union(*operands)
    if kind == CONCAT_KIND:
        return concat(*operands)
    if kind == STAR_KIND:
        if len(operands) != 1:
            raise ValueError("star takes exactly one operand")
        return star(operands[0])
    raise ValueError(f"unknown regex kind {kind!r}")


def alphabetic_size(r: Regex) -> int:
    return r.size


# -- membership by derivatives ----------------------------------------------


def derivative(r: Regex, a: int) -> Regex:
    """Brzozowski derivative of ``r`` by the symbol ``a``."""
    cached = r._derivs.get(a)
    if cached is not None:
        return cached
    kind = r.kind
    if kind == SYM_KIND:
        d = EPSILON if r.args == a else EMPTY
    elif kind == UNION_KIND:
        d = union(*(derivative(p, a) for p in r.args))
    elif kind == CONCAT_KIND:
        head, rest = r.args[0], r.args[1:]
        tail = rest[0] if len(rest) == 1 else Regex(CONCAT_KIND, rest)
        d = concat(derivative(head, a), tail)
        if head.nullable:
            d = union(d, derivative(tail, a))
    elif kind == STAR_KIND:
        d = concat(derivative(r.args, a), r)
    else:
        d = EMPTY
    r._derivs[a] = d
    return d


def matches(r: Regex, word: Iterable[int]) -> bool:
    for a in word:
        r = derivative(r, a)
        if r is EMPTY:
            return False
    return r.nullable


# -- text form ----------------------------------------------------------------


def symbol_name(index: int, k: int | None = None) -> str:
    if (k is None or k <= 26) and index < 26:
        return string.ascii_lowercase[index]
    return f"s{index}"


def _emit(r: Regex, k: int | None, prec: int, out: list[str]) -> None:
    # prec: 0 union context, 1 concat operand, 2 star operand
    kind = r.kind
    if kind == EMPTY_KIND:
        out.append("@")
    elif kind == EPS_KIND:
        out.append("~")
    elif kind == SYM_KIND:
        out.append(symbol_name(r.args, k))
    elif kind == STAR_KIND:
        _emit(r.args, k, 2, out)
        out.append("*")
    else:
        mine = 0 if kind == UNION_KIND else 1
        if mine < prec:
            out.append("(")
        for i, p in enumerate(r.args):
            if i and kind == UNION_KIND:
                out.append("+")
            _emit(p, k, mine + (kind == CONCAT_KIND), out)
        if mine < prec:
            out.append(")")


def to_string(r: Regex, k: int | None = None) -> str:
    """Serialize, expanding shared subterms.

    ``@`` is the empty set, ``~`` the empty word; postfix ``*`` binds tighter
    than juxtaposition, which binds tighter than ``+``.
    """
    out: list[str] = []
    _emit(r, k, 0, out)
    return "".join(out)


def _tokens(text: str) -> Iterator[str]:
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c == "s" and i + 1 < len(text) and text[i + 1].isdigit():
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            yield text[i:j]
            i = j
        else:
            yield c
            i += 1


def parse(text: str) -> Regex:
    """Parse the textual form produced by :func:`to_string`."""
    toks = list(_tokens(text))
    pos = 0

    def peek() -> str | None:
        return toks[pos] if pos < len(toks) else None

    def take() -> str:
        nonlocal pos
        pos += 1
        return toks[pos - 1]

    def parse_union() -> Regex:
        parts = [parse_concat()]
        while peek() == "+":
            take()
            parts.append(parse_concat())
        return union(*parts)

    def parse_concat() -> Regex:
        parts = []
        while peek() is not None and peek() not in "+)":
            parts.append(parse_star())
        if not parts:
            raise ValueError(f"empty operand at token {pos} in {text!r}")
        return concat(*parts)

    def parse_star() -> Regex:
        r = parse_atom()
        while peek() == "*":
            take()
            r = star(r)
        return r

    def parse_atom() -> Regex:
        t = take()
        if t == "(":
            r = parse_union()
            if peek() != ")":
                raise ValueError(f"unbalanced parenthesis in {text!r}")
            take()
            return r
        if t == "@":
            return EMPTY
        if t == "~":
            return EPSILON
        if len(t) == 1 and t in string.ascii_lowercase:
            return symbol(ord(t) - ord("a"))
        if t.startswith("s") and t[1:].isdigit():
            return symbol(int(t[1:]))
        raise ValueError(f"unexpected token {t!r} in {text!r}")

    r = parse_union()
    if pos != len(toks):
        raise ValueError(f"trailing input in {text!r}")
    return r
