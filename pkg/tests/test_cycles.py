import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import trim_nfas
from fa2re.automata import Digraph, Efa, to_efa
from fa2re.cycles import (
    CycleCapExceeded,
    cc_strategy,
    cd_strategy,
    cd_weights,
    cs_strategy,
    cycle_weights,
    elementary_cycles,
    strongly_connected_components,
)
from fa2re.elimination import Variant, convert
from fa2re.ordering import dm_strategy
from fa2re.regex import concat, symbol, union
from oracles import brute_cycles

a, b, c = symbol(0), symbol(1), symbol(2)


def test_counts_five_state(efa_five):
    cs = elementary_cycles(efa_five)
    assert [cs.per_state_count[q] for q in range(5)] == [4, 3, 4, 3, 2]
    assert len(cs.cycles) == 5


def test_trivial_graphs():
    acyclic = Digraph((0, 1, 2), frozenset({(0, 1), (1, 2), (0, 2)}))
    cs = elementary_cycles(acyclic)
    assert cs.cycles == () and set(cs.per_state_count.values()) == {0}
    loop = elementary_cycles(Digraph((0,), frozenset({(0, 0)})))
    assert loop.cycles == ((0,),) and loop.per_state_count == {0: 1}


def test_cap():
    # complete digraph with loops: one cycle per cyclic arrangement of each subset
    arcs = frozenset((p, q) for p in range(6) for q in range(6))
    expected = sum(math.comb(6, k) * math.factorial(k - 1) for k in range(1, 7))
    assert len(elementary_cycles(Digraph(tuple(range(6)), arcs)).cycles) == expected == 415
    with pytest.raises(CycleCapExceeded) as err:
        elementary_cycles(Digraph(tuple(range(6)), arcs), cap=100)
    assert err.value.count == 101 and err.value.cap == 100


def _random_digraph(rng: random.Random, n: int, p: float) -> Digraph:
    arcs = frozenset((u, v) for u in range(n) for v in range(n) if rng.random() < p)
    return Digraph(tuple(range(n)), arcs)


def test_oracle_agreement_200_graphs():
    rng = random.Random(7)
    for _ in range(200):
        d = _random_digraph(rng, rng.randint(1, 7), rng.choice([0.2, 0.35, 0.5]))
        cs = elementary_cycles(d)
        assert len(set(cs.cycles)) == len(cs.cycles)
        assert set(cs.cycles) == brute_cycles(d.vertices, set(d.arcs))


@given(st.integers(1, 6), st.sets(st.tuples(st.integers(0, 5), st.integers(0, 5))))
def test_counts_consistent(n, arcs):
    arcs = frozenset((u, v) for u, v in arcs if u < n and v < n)
    cs = elementary_cycles(Digraph(tuple(range(n)), arcs))
    assert sum(cs.per_state_count.values()) == sum(len(c) for c in cs.cycles)


@given(st.dictionaries(st.integers(0, 7), st.sets(st.integers(0, 7))))
def test_scc_partition(adj):
    adj = {v: sorted(w for w in adj.get(v, ()) if w <= 7) for v in range(8)}
    comps = strongly_connected_components(adj)
    assert sorted(v for comp in comps for v in comp) == list(range(8))
    # same component iff mutually reachable
    reach = {}
    for v in adj:
        seen, stack = {v}, [v]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        reach[v] = seen
    where = {v: i for i, comp in enumerate(comps) for v in comp}
    for u in adj:
        for v in adj:
            assert (where[u] == where[v]) == (v in reach[u] and u in reach[v])


def test_cd_weights_examples():
    e = Efa(range(3), 3, 0, {2}, {(0, 1): a, (1, 0): concat(b, c), (1, 2): a})
    w = cd_weights(e)
    assert w[0] == 3 and w[1] == 3 and w[2] == 0
    acyclic = Efa(range(3), 2, 0, {2}, {(0, 1): a, (1, 2): b})
    assert set(cd_weights(acyclic).values()) == {0}
    assert cd_weights(Efa([0], 2, 0, {0}, {(0, 0): union(a, b)})) == {0: 2}


@given(trim_nfas())
def test_cd_at_least_count(nfa):
    e = to_efa(nfa)
    counts = cycle_weights(e, lambda c: 1)
    for q, w in cd_weights(e).items():
        assert w >= counts[q]


def test_cs_first_pick_five_state(efa_five):
    s = cs_strategy(efa_five)
    assert s.select(efa_five, frozenset({1, 2, 3, 4})) == 4


def test_cs_acyclic_follows_numbering():
    e = Efa(range(5), 2, 0, {4}, {(0, 2): a, (2, 1): b, (1, 3): a, (3, 4): b})
    assert convert(e, cs_strategy(e), "seawn").order == (1, 2, 3)


def test_cycle_heuristics_five_state(efa_five):
    # static counts
    assert convert(efa_five, cs_strategy(efa_five), "seawn").order == (4, 1, 3, 2)
    # counts recomputed after each step
    cc = convert(efa_five, cc_strategy(efa_five), "seawn")
    assert cc.order == (4, 1, 2, 3) and cc.size == 19
    cd = convert(efa_five, cd_strategy(efa_five), "seawn")
    assert cd.size <= 19


def test_cap_falls_back_to_dm():
    labels = {(p, q): a for p in range(6) for q in range(6) if p != q}
    e = Efa(range(6), 2, 0, {5}, labels)
    for make in (cs_strategy, cd_strategy, cc_strategy):
        s = make(e, cap=10)
        r = convert(e, s, Variant.WITHOUT_NORMALIZATION)
        assert "cycle_cap" in s.flags
        assert r.order == convert(e, dm_strategy(), Variant.WITHOUT_NORMALIZATION).order
