import sys
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from fa2re.automata import EMPTY_LANGUAGE, CanonicalString, Nfa, parse_canonical, to_efa, trim

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

# the two worked automata, as canonical strings
DFA_THREE = CanonicalString.from_text("12312312", 2, {3})
DFA_FIVE = CanonicalString.from_text("1232004232", 2, {3, 4})


@pytest.fixture
def dfa_three():
    return parse_canonical(DFA_THREE)


@pytest.fixture
def dfa_five():
    return parse_canonical(DFA_FIVE)


@pytest.fixture
def efa_three():
    return to_efa(parse_canonical(DFA_THREE))


@pytest.fixture
def efa_five():
    return to_efa(parse_canonical(DFA_FIVE))


@st.composite
def nfas(draw, max_n=6, k=2, epsilon=False):
    n = draw(st.integers(1, max_n))
    letters = list(range(k)) + ([None] if epsilon else [])
    triple = st.tuples(st.integers(0, n - 1), st.sampled_from(letters), st.integers(0, n - 1))
    trans = draw(st.frozensets(triple, max_size=3 * n))
    finals = draw(st.frozensets(st.integers(0, n - 1), min_size=1))
    return Nfa(n, k, trans, 0, finals)


@st.composite
def trim_nfas(draw, max_n=6, k=2):
    a = draw(nfas(max_n, k))
    t = trim(a)
    if t is EMPTY_LANGUAGE:
        # fall back to a one-state automaton accepting the empty word
        return Nfa(1, k, frozenset(), 0, frozenset({0}))
    return t[0]


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in module.RESULTS:
            terminalreporter.write_line(line)
