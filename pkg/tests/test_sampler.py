import io
from collections import Counter

import pytest
from scipy.stats import chisquare

from fa2re.automata import CanonicalString, parse_line, serialize_canonical
from fa2re.sampler import (
    FINAL_MODES,
    SampleSpec,
    acceptance_rate,
    iter_samples,
    read_sample_file,
    sample_icdfa,
    write_sample_file,
)
from oracles import bfs_canonical, canonical_strings


def test_one_state():
    spec = SampleSpec(1, 3, 20, seed=4)
    for _, d, s in iter_samples(spec):
        assert s.text == "000" and s.finals == {0}
        assert d.is_complete


def test_deterministic():
    spec = SampleSpec(8, 3, 10, seed=99)
    assert sample_icdfa(spec, 7) == sample_icdfa(spec, 7)
    assert sample_icdfa(spec, 7)[1] != sample_icdfa(spec, 6)[1]
    # a sample does not depend on how many others were requested
    assert sample_icdfa(SampleSpec(8, 3, 1000, seed=99), 7) == sample_icdfa(spec, 7)


@pytest.mark.parametrize("mode", FINAL_MODES)
def test_samples_are_valid_icdfas(mode):
    spec = SampleSpec(10, 2, 200, seed=3, final_mode=mode)
    for _, d, s in iter_samples(spec):
        assert d.is_complete
        assert bfs_canonical(d.table()) == s.digits
        assert serialize_canonical(d)[0] == s
        assert s.finals
        if mode == "single":
            assert len(s.finals) == 1


def test_final_probability_half():
    spec = SampleSpec(10, 2, 2000, seed=5)
    share = sum(len(s.finals) for _, _, s in iter_samples(spec)) / (10 * 2000)
    # fair coins conditioned on a nonempty set: mean 5 / (1 - 2**-10) per automaton
    assert abs(share - 0.5 / (1 - 2**-10)) < 0.01


def test_uniform_over_canonical_strings():
    expected = canonical_strings(3, 2)
    spec = SampleSpec(3, 2, 40 * len(expected), seed=11)
    counts = Counter(s.digits for _, _, s in iter_samples(spec))
    assert set(counts) <= set(expected)
    observed = [counts[d] for d in expected]
    assert chisquare(observed).pvalue > 0.01


def test_file_round_trip():
    spec = SampleSpec(12, 3, 5, seed=1)
    buf = io.StringIO()
    write_sample_file(spec, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0].startswith("# n=12 k=3 count=5 seed=1 final_mode=each-state-prob-half")
    assert read_sample_file(lines) == [s for _, _, s in iter_samples(spec)]
    assert all(isinstance(parse_line(line), CanonicalString) for line in lines[1:])


def test_acceptance_rate():
    rate = acceptance_rate(SampleSpec(10, 2, 300, seed=2))
    assert 0.05 < rate < 0.5
    assert acceptance_rate(SampleSpec(1, 2, 10)) == 1.0


def test_spec_validation():
    with pytest.raises(ValueError):
        SampleSpec(0, 2)
    with pytest.raises(ValueError):
        SampleSpec(3, 2, final_mode="all")
    with pytest.raises(ValueError):
        SampleSpec(3, 2, seed=-1)
