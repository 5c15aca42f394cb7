"""Batch experiments over sampled ICDFAs.

Every sample is processed independently from ``(seed, index)``, so a worker
pool returns exactly what a sequential run would; results are collected in
index order.
"""

from __future__ import annotations

import csv
import json
import multiprocessing
from dataclasses import asdict, dataclass, field
from pathlib import Path
from statistics import fmean
from typing import Callable, Iterable, Sequence, TypeVar

import numpy as np

from .automata import EMPTY_LANGUAGE, CanonicalString, Efa, EmptyLanguage, to_efa, trim
from .bridges import bridge_states
from .elimination import Variant, normalize_always
from .regex import to_string
from .sampler import GENERATOR_ID, SampleSpec, sample_icdfa
from .strategies import STRATEGY_NAMES, run_named

__all__ = [
    "RULESET_VERSION",
    "BRIDGE_FORMS",
    "RunRecord",
    "BridgeRecord",
    "BridgeDensity",
    "RatioSummary",
    "SummaryRow",
    "prepare_sample",
    "run_heuristics",
    "bridge_density_experiment",
    "ratio_experiment",
    "heuristic_comparison",
    "mean_sizes",
    "write_csv",
    "write_metadata",
    "metadata",
]

# bump when the simplification rules change measured sizes
RULESET_VERSION = "unit-zero-flatten-dedup/1"
EMIT_REGEX_LIMIT = 10**5

T = TypeVar("T")


@dataclass(frozen=True)
class RunRecord:
    index: int
    canonical: str
    finals: tuple[int, ...]
    heuristic: str
    variant: str
    size: int
    order: tuple[int, ...]
    flags: tuple[str, ...] = ()
    regex: str = ""

    @property
    def degenerate(self) -> bool:
        return "degenerate" in self.flags

    def row(self) -> dict[str, object]:
        return {
            "index": self.index,
            "canonical": self.canonical,
            "finals": ",".join(map(str, self.finals)),
            "heuristic": self.heuristic,
            "variant": self.variant,
            "size": self.size,
            "order": " ".join(map(str, self.order)),
            "flags": ",".join(self.flags),
            "regex": self.regex,
        }


@dataclass(frozen=True)
class BridgeRecord:
    index: int
    canonical: str
    finals: tuple[int, ...]
    bridges: tuple[int, ...]
    degenerate: bool = False

    def row(self) -> dict[str, object]:
        return {
            "index": self.index,
            "canonical": self.canonical,
            "finals": ",".join(map(str, self.finals)),
            "bridges": " ".join(map(str, self.bridges)),
            "count": len(self.bridges),
            "degenerate": int(self.degenerate),
        }


@dataclass(frozen=True)
class BridgeDensity:
    samples: int
    tot: int
    num: int
    pos: float | None
    degenerate: int = 0

    @property
    def fraction_with_bridge(self) -> float:
        return self.num / self.samples

    @property
    def bridges_per_automaton(self) -> float:
        return self.tot / self.samples

    def as_dict(self) -> dict[str, object]:
        d = asdict(self)
        d["pos"] = "N/A" if self.pos is None else self.pos
        d["fraction_with_bridge"] = self.fraction_with_bridge
        d["bridges_per_automaton"] = self.bridges_per_automaton
        return d


@dataclass(frozen=True)
class RatioSummary:
    means: dict[str, float]
    swn_over_s: float
    dmwn_over_dm: float
    samples: int
    degenerate: int

    def as_dict(self) -> dict[str, object]:
        return asdict(self)


@dataclass(frozen=True)
class SummaryRow:
    n: int
    k: int
    means: dict[str, float]
    maxima: dict[str, int]
    b3_mean: float
    samples: int
    degenerate: int
    cycle_cap_fallbacks: int = 0
    b3_wins: dict[str, int] = field(default_factory=dict)

    def as_dict(self) -> dict[str, object]:
        return asdict(self)


def _key(heuristic: str, variant: str) -> str:
    return heuristic if variant == "sea" else heuristic + "wn"


def prepare_sample(spec: SampleSpec, index: int) -> tuple[CanonicalString, Efa | EmptyLanguage, dict[int, int]]:
    """Sample, trim and convert to an extended automaton.

    The returned mapping takes trimmed state numbers back to canonical ones.
    """
    d, canon = sample_icdfa(spec, index)
    trimmed = trim(d)
    if trimmed is EMPTY_LANGUAGE:
        return canon, EMPTY_LANGUAGE, {}
    a, renum = trimmed
    return canon, to_efa(a), {new: old for old, new in renum.items()}


def _strategy_seed(spec: SampleSpec, index: int) -> int:
    return int(np.random.SeedSequence(spec.seed, spawn_key=(index, 1)).generate_state(1)[0])


def _run_one(job: tuple[SampleSpec, int, tuple[tuple[str, str], ...], bool]) -> list[RunRecord]:
    spec, index, runs, emit_regex = job
    canon, e, back = prepare_sample(spec, index)
    out = []
    for heuristic, variant in runs:
        result, flags = run_named(e, heuristic, variant, seed=_strategy_seed(spec, index))
        text = ""
        if emit_regex and result.size <= EMIT_REGEX_LIMIT:
            text = to_string(result.regex, spec.k)
        out.append(
            RunRecord(
                index=index,
                canonical=canon.text,
                finals=tuple(sorted(canon.finals)),
                heuristic=heuristic,
                variant=variant,
                size=result.size,
                order=tuple(back[q] for q in result.order),
                flags=tuple(sorted(flags)),
                regex=text,
            )
        )
    return out


BRIDGE_FORMS = ("normalized", "trimmed")


def _bridge_one(job: tuple[SampleSpec, int, str]) -> BridgeRecord:
    spec, index, form = job
    canon, e, back = prepare_sample(spec, index)
    finals = tuple(sorted(canon.finals))
    if isinstance(e, EmptyLanguage):
        return BridgeRecord(index, canon.text, finals, (), True)
    if form == "normalized":
        # fresh endpoints let the original initial and final states qualify
        e = normalize_always(e)
    return BridgeRecord(index, canon.text, finals, tuple(back[q] for q in bridge_states(e).bridges))


def _pmap(func: Callable[..., T], jobs: Sequence, workers: int) -> list[T]:
    if workers <= 1:
        return [func(j) for j in jobs]
    with multiprocessing.get_context("spawn").Pool(workers) as pool:
        return list(pool.imap(func, jobs, chunksize=max(1, len(jobs) // (workers * 16))))


def run_heuristics(
    spec: SampleSpec,
    runs: Iterable[tuple[str, str]],
    workers: int = 1,
    emit_regex: bool = False,
) -> list[RunRecord]:
    runs = tuple((h, Variant.parse(v).value) for h, v in runs)
    for h, _ in runs:
        if h not in STRATEGY_NAMES:
            raise ValueError(f"unknown heuristic {h!r}")
    jobs = [(spec, i, runs, emit_regex) for i in range(spec.count)]
    return [r for batch in _pmap(_run_one, jobs, workers) for r in batch]


def mean_sizes(records: Iterable[RunRecord]) -> dict[str, float]:
    sizes: dict[str, list[int]] = {}
    for r in records:
        if not r.degenerate:
            sizes.setdefault(_key(r.heuristic, r.variant), []).append(r.size)
    return {k: fmean(v) for k, v in sizes.items()}


def bridge_density_experiment(
    spec: SampleSpec, workers: int = 1, form: str = "normalized"
) -> tuple[BridgeDensity, list[BridgeRecord]]:
    """Totals of bridge states, automata having one, and their mean canonical number.

    ``form`` picks the automaton searched: ``"normalized"`` adds a fresh
    initial and a fresh final state to the trimmed DFA first, ``"trimmed"``
    searches the trimmed DFA itself (whose initial and final states can
    never be bridges).
    """
    if form not in BRIDGE_FORMS:
        raise ValueError(f"form must be one of {BRIDGE_FORMS}, got {form!r}")
    records = _pmap(_bridge_one, [(spec, i, form) for i in range(spec.count)], workers)
    positions = [q for r in records for q in r.bridges]
    summary = BridgeDensity(
        samples=len(records),
        tot=len(positions),
        num=sum(1 for r in records if r.bridges),
        pos=fmean(positions) if positions else None,
        degenerate=sum(r.degenerate for r in records),
    )
    return summary, records


def ratio_experiment(spec: SampleSpec, workers: int = 1) -> tuple[RatioSummary, list[RunRecord]]:
    runs = (("s", "sea"), ("s", "seawn"), ("dm", "sea"), ("dm", "seawn"))
    records = run_heuristics(spec, runs, workers)
    means = mean_sizes(records)
    degenerate = len({r.index for r in records if r.degenerate})
    summary = RatioSummary(
        means=means,
        swn_over_s=means["swn"] / means["s"],
        dmwn_over_dm=means["dmwn"] / means["dm"],
        samples=spec.count,
        degenerate=degenerate,
    )
    return summary, records


COMPARED = ("dm", "cs", "cd")
# all compared runs are unnormalized; only DM gets the suffix
LABELS = {"dm": "dmwn", "cs": "cs", "cd": "cd"}


def summarize_comparison(spec: SampleSpec, records: Sequence[RunRecord]) -> SummaryRow:
    by_index: dict[int, dict[str, RunRecord]] = {}
    for r in records:
        by_index.setdefault(r.index, {})[r.heuristic] = r
    sizes: dict[str, list[int]] = {h: [] for h in COMPARED}
    best: list[int] = []
    wins = dict.fromkeys(COMPARED, 0)
    degenerate = fallbacks = 0
    for index in sorted(by_index):
        row = by_index[index]
        if any(r.degenerate for r in row.values()):
            degenerate += 1
            continue
        fallbacks += any("cycle_cap" in r.flags for r in row.values())
        for h in COMPARED:
            sizes[h].append(row[h].size)
        low = min(row[h].size for h in COMPARED)
        best.append(low)
        for h in COMPARED:
            wins[h] += row[h].size == low
    return SummaryRow(
        n=spec.n,
        k=spec.k,
        means={LABELS[h]: fmean(v) for h, v in sizes.items()},
        maxima={LABELS[h]: max(v) for h, v in sizes.items()},
        b3_mean=fmean(best),
        samples=len(by_index),
        degenerate=degenerate,
        cycle_cap_fallbacks=fallbacks,
        b3_wins={LABELS[h]: v for h, v in wins.items()},
    )


def heuristic_comparison(
    spec: SampleSpec, workers: int = 1, emit_regex: bool = False
) -> tuple[SummaryRow, list[RunRecord]]:
    """DMwn, CS and CD (all without normalization) and their per-sample best."""
    records = run_heuristics(spec, [(h, "seawn") for h in COMPARED], workers, emit_regex)
    return summarize_comparison(spec, records), records


# -- output --------------------------------------------------------------------


def write_csv(rows: Iterable[dict[str, object]], path: str | Path) -> None:
    rows = list(rows)
    with open(path, "w", newline="") as fh:
        if not rows:
            return
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


def metadata(experiment: str, spec: SampleSpec, summary: dict[str, object]) -> dict[str, object]:
    return {
        "experiment": experiment,
        "n": spec.n,
        "k": spec.k,
        "count": spec.count,
        "seed": spec.seed,
        "final_mode": spec.final_mode,
        "generator": GENERATOR_ID,
        "ruleset": RULESET_VERSION,
        "summary": summary,
    }


def write_metadata(meta: dict[str, object], path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
