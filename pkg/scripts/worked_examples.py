#!/usr/bin/env python3
"""Regex sizes for the two small example DFAs under every heuristic and variant."""

import argparse

from fa2re.automata import CanonicalString, parse_canonical, to_efa
from fa2re.cycles import elementary_cycles
from fa2re.elimination import Variant
from fa2re.ordering import brute_force_optimal
from fa2re.regex import to_string
from fa2re.strategies import STRATEGY_NAMES, run_named

EXAMPLES = {
    "three-state": CanonicalString.from_text("12312312", 2, {3}),
    "five-state": CanonicalString.from_text("1232004232", 2, {3, 4}),
}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--show-regex", action="store_true")
    args = parser.parse_args()

    for name, canon in EXAMPLES.items():
        e = to_efa(parse_canonical(canon))
        counts = elementary_cycles(e).per_state_count
        print(f"## {name} example {canon.text} finals {sorted(canon.finals)}")
        print("cycles per state:", [counts[q] for q in sorted(counts)])
        for v in Variant:
            bf = brute_force_optimal(e, v)
            print(f"{v.value}: brute force min {bf.best_size} {bf.best_order}, max {bf.worst_size} {bf.worst_order}")
        print(f"{'heuristic':<10}{'sea':>6}{'seawn':>7}  orders")
        for h in STRATEGY_NAMES:
            runs = [run_named(e, h, v, seed=0)[0] for v in Variant]
            print(f"{h:<10}{runs[0].size:>6}{runs[1].size:>7}  {runs[0].order} / {runs[1].order}")
            if args.show_regex:
                for r in runs:
                    print("   ", to_string(r.regex, canon.k))
        print()


if __name__ == "__main__":
    main()
