"""Command line entry point: ``fa2re convert | sample | bench | oracle``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .automata import EMPTY_LANGUAGE, CanonicalError, CanonicalString, parse_canonical, to_efa, trim
from .cycles import CycleCapExceeded
from .elimination import Variant
from .harness import (
    BRIDGE_FORMS,
    bridge_density_experiment,
    heuristic_comparison,
    metadata,
    ratio_experiment,
    write_csv,
    write_metadata,
)
from .ordering import BruteForceCapExceeded, OrderExhausted, brute_force_optimal
from .regex import to_string
from .sampler import FINAL_MODES, SampleSpec, SamplingError, acceptance_rate, write_sample_file
from .strategies import STRATEGY_NAMES, run_named


def _finals(text: str) -> frozenset[int]:
    return frozenset(int(t) for t in text.replace(",", " ").split())


def _automaton(args: argparse.Namespace):
    canon = CanonicalString.from_text(args.canonical, args.k, _finals(args.finals))
    trimmed = trim(parse_canonical(canon))
    if trimmed is EMPTY_LANGUAGE:
        return canon, EMPTY_LANGUAGE, {}
    a, renum = trimmed
    return canon, to_efa(a), {new: old for old, new in renum.items()}


def _add_automaton_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--canonical", required=True, help="canonical digit string, e.g. 12312312")
    p.add_argument("--finals", default="", help="comma separated final states")
    p.add_argument("--k", type=int, default=2, help="alphabet size (default 2)")
    p.add_argument("--variant", choices=[v.value for v in Variant], default="sea")


def cmd_convert(args: argparse.Namespace) -> int:
    canon, e, back = _automaton(args)
    result, flags = run_named(e, args.heuristic, args.variant, seed=args.seed, bf_cap=args.max_states)
    out = {
        "regex": to_string(result.regex, canon.k),
        "size": result.size,
        "order": [back[q] if q in back else q for q in result.order],
        "flags": sorted(flags),
    }
    print(json.dumps(out) if args.json else f"{out['regex']}\nsize={out['size']} order={out['order']}")
    return 0


def cmd_oracle_bf(args: argparse.Namespace) -> int:
    canon, e, back = _automaton(args)
    if e is EMPTY_LANGUAGE:
        print(json.dumps({"best_size": 0, "worst_size": 0, "degenerate": True}))
        return 0
    bf = brute_force_optimal(e, args.variant, cap=args.max_states)
    relabel = lambda order: [back.get(q, q) for q in order]  # noqa: E731
    print(
        json.dumps(
            {
                "best_size": bf.best_size,
                "best_order": relabel(bf.best_order),
                "worst_size": bf.worst_size,
                "worst_order": relabel(bf.worst_order),
                "orders": bf.evaluated,
            }
        )
    )
    return 0


def _spec(args: argparse.Namespace) -> SampleSpec:
    return SampleSpec(args.n, args.k, args.count, args.seed, args.final_mode)


def cmd_sample(args: argparse.Namespace) -> int:
    spec = _spec(args)
    if args.out:
        with open(args.out, "w") as fh:
            write_sample_file(spec, fh)
    else:
        write_sample_file(spec, sys.stdout)
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    spec = _spec(args)
    if args.experiment == "bridge":
        summary, records = bridge_density_experiment(spec, args.workers, form=args.bridge_form)
        extra = {"bridge_form": args.bridge_form}
    elif args.experiment == "ratio":
        summary, records = ratio_experiment(spec, args.workers)
        extra = {}
    else:
        summary, records = heuristic_comparison(spec, args.workers, args.emit_regex)
        extra = {}
    meta = metadata(args.experiment, spec, summary.as_dict())
    meta.update(extra)
    meta["acceptance_rate"] = acceptance_rate(spec)
    if args.out:
        out = Path(args.out)
        write_csv((r.row() for r in records), out)
        write_metadata(meta, out.with_suffix(".json"))
    print(json.dumps(meta["summary"], sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fa2re", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="convert one automaton given by its canonical string")
    _add_automaton_args(p)
    p.add_argument("--heuristic", choices=STRATEGY_NAMES, default="dm")
    p.add_argument("--seed", type=int, default=0, help="seed for the random order")
    p.add_argument("--max-states", type=int, default=8, help="brute-force cap for --heuristic bf")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_convert)

    def sampling(p: argparse.ArgumentParser) -> None:
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--count", type=int, default=10_000)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--final-mode", choices=FINAL_MODES, default=FINAL_MODES[0])
        p.add_argument("--out", default=None)

    p = sub.add_parser("sample", help="write a file of sampled ICDFAs")
    sampling(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("bench", help="run an experiment over sampled ICDFAs")
    p.add_argument("experiment", choices=("bridge", "ratio", "compare"))
    sampling(p)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--emit-regex", action="store_true", help="store regex text (size <= 1e5) in the CSV")
    p.add_argument("--bridge-form", choices=BRIDGE_FORMS, default=BRIDGE_FORMS[0])
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("oracle", help="exhaustive reference computations")
    p.add_argument("oracle", choices=("bf",))
    _add_automaton_args(p)
    p.add_argument("--max-states", type=int, default=8)
    p.set_defaults(func=cmd_oracle_bf)
    return parser


ERRORS = (
    CanonicalError,
    BruteForceCapExceeded,
    CycleCapExceeded,
    OrderExhausted,
    SamplingError,
    ValueError,
    OSError,
)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ERRORS as exc:
        print(f"fa2re: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
