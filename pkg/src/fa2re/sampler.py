"""Uniform random complete initially-connected DFAs.

A transition table is drawn uniformly and rejected unless every state is
reachable from state 0.  Every isomorphism class of ICDFAs has exactly
(n-1)! labelled members with state 0 initial (the automorphism group is
trivial because each state is the image of the initial state under some
word), so accepted tables are uniform over classes once relabelled into
canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Iterable, Iterator

import numpy as np

from .automata import CanonicalString, Nfa, format_line, parse_canonical, parse_line, serialize_canonical

__all__ = [
    "FINAL_MODES",
    "GENERATOR_ID",
    "SampleSpec",
    "SamplingError",
    "sample_rng",
    "acceptance_rate",
    "sample_icdfa",
    "iter_samples",
    "write_sample_file",
    "read_sample_file",
]

FINAL_MODES = ("each-state-prob-half", "uniform-nonempty", "single")
GENERATOR_ID = "numpy.PCG64(SeedSequence(seed, spawn_key=(index,)))"
MAX_REJECTIONS = 10**6


class SamplingError(RuntimeError):
    pass


@dataclass(frozen=True)
class SampleSpec:
    n: int
    k: int
    count: int = 10_000
    seed: int = 0
    final_mode: str = "each-state-prob-half"

    def __post_init__(self) -> None:
        if self.n < 1 or self.k < 1 or self.count < 1:
            raise ValueError(f"need n, k, count >= 1, got {self.n}, {self.k}, {self.count}")
        if self.final_mode not in FINAL_MODES:
            raise ValueError(f"final_mode must be one of {FINAL_MODES}, got {self.final_mode!r}")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


def sample_rng(seed: int, index: int) -> np.random.Generator:
    """Independent stream for one sample; draws never depend on other samples."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))


def _initially_connected(table: np.ndarray) -> bool:
    n = table.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    stack = [0]
    found = 1
    while stack:
        for q in table[stack.pop()]:
            if not seen[q]:
                seen[q] = True
                found += 1
                stack.append(int(q))
    return found == n


def _draw_finals(rng: np.random.Generator, n: int, mode: str) -> frozenset[int]:
    if mode == "single":
        return frozenset({int(rng.integers(n))})
    if mode == "uniform-nonempty" and n < 63:
        mask = int(rng.integers(1, 2**n))
        return frozenset(i for i in range(n) if mask >> i & 1)
    # fair coin per state, redrawn while empty (uniform over nonempty sets too)
    while True:
        bits = rng.random(n) < 0.5
        if bits.any():
            return frozenset(int(i) for i in np.flatnonzero(bits))


def _draw_table(rng: np.random.Generator, n: int, k: int) -> tuple[np.ndarray, int]:
    for attempt in range(1, MAX_REJECTIONS + 1):
        table = rng.integers(0, n, size=(n, k))
        if _initially_connected(table):
            return table, attempt
    raise SamplingError(f"no initially-connected table after {MAX_REJECTIONS} draws (n={n}, k={k})")


def acceptance_rate(spec: SampleSpec) -> float:
    """Fraction of uniform transition tables that are initially connected,
    measured over the tables drawn for the first ``spec.count`` samples."""
    attempts = sum(_draw_table(sample_rng(spec.seed, i), spec.n, spec.k)[1] for i in range(spec.count))
    return spec.count / attempts


def sample_icdfa(spec: SampleSpec, index: int) -> tuple[Nfa, CanonicalString]:
    rng = sample_rng(spec.seed, index)
    table, _ = _draw_table(rng, spec.n, spec.k)
    finals = _draw_finals(rng, spec.n, spec.final_mode)
    raw = Nfa.from_table(table.tolist(), ())
    canon, _ = serialize_canonical(raw)
    canon = CanonicalString(canon.digits, canon.n, canon.k, finals)
    return parse_canonical(canon), canon


def iter_samples(spec: SampleSpec) -> Iterator[tuple[int, Nfa, CanonicalString]]:
    for i in range(spec.count):
        d, s = sample_icdfa(spec, i)
        yield i, d, s


def header(spec: SampleSpec) -> str:
    return (
        f"# n={spec.n} k={spec.k} count={spec.count} seed={spec.seed} "
        f"final_mode={spec.final_mode} generator={GENERATOR_ID}"
    )


def write_sample_file(spec: SampleSpec, out: IO[str]) -> None:
    out.write(header(spec) + "\n")
    for _, _, s in iter_samples(spec):
        out.write(format_line(s) + "\n")


def read_sample_file(lines: Iterable[str]) -> list[CanonicalString]:
    return [parse_line(line) for line in lines if line.strip() and not line.startswith("#")]
