#!/usr/bin/env python3
"""Bridge density, S/DM ratio and heuristic comparison over sampled ICDFAs.

Writes one CSV of per-sample records plus a JSON metadata file per
experiment into --outdir and prints the summary tables.
"""

import argparse
import time
from pathlib import Path

from fa2re.harness import (
    BRIDGE_FORMS,
    bridge_density_experiment,
    heuristic_comparison,
    metadata,
    ratio_experiment,
    write_csv,
    write_metadata,
)
from fa2re.sampler import FINAL_MODES, SampleSpec, acceptance_rate


def save(outdir: Path, stem: str, experiment: str, spec: SampleSpec, summary, records, **extra) -> None:
    write_csv((r.row() for r in records), outdir / f"{stem}.csv")
    meta = metadata(experiment, spec, summary.as_dict())
    meta.update(extra, acceptance_rate=acceptance_rate(spec))
    write_metadata(meta, outdir / f"{stem}.json")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--n", type=int, default=10)
    parser.add_argument("--count", type=int, default=10_000)
    parser.add_argument("--seed", type=int, default=2009)
    parser.add_argument("--final-mode", choices=FINAL_MODES, default=FINAL_MODES[0])
    parser.add_argument("--bridge-ks", type=int, nargs="+", default=[2, 3, 5, 10])
    parser.add_argument("--bridge-form", choices=BRIDGE_FORMS, default=BRIDGE_FORMS[0])
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--outdir", type=Path, default=Path("runs"))
    parser.add_argument("--only", choices=("bridge", "ratio", "compare"), nargs="+")
    args = parser.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    wanted = set(args.only or ("bridge", "ratio", "compare"))

    def spec(k: int) -> SampleSpec:
        return SampleSpec(args.n, k, args.count, args.seed, args.final_mode)

    if "bridge" in wanted:
        print(f"bridge states ({args.bridge_form})")
        print(f"{'k':>3}{'tot':>7}{'num':>7}{'pos':>8}{'frac':>8}{'mean':>8}")
        for k in args.bridge_ks:
            t0 = time.perf_counter()
            d, recs = bridge_density_experiment(spec(k), args.workers, form=args.bridge_form)
            save(args.outdir, f"bridge_k{k}", "bridge", spec(k), d, recs, bridge_form=args.bridge_form)
            pos = "N/A" if d.pos is None else f"{d.pos:.3f}"
            print(
                f"{k:>3}{d.tot:>7}{d.num:>7}{pos:>8}{d.fraction_with_bridge:>8.4f}"
                f"{d.bridges_per_automaton:>8.4f}   ({time.perf_counter() - t0:.0f} s)"
            )

    if "ratio" in wanted:
        r, recs = ratio_experiment(spec(2), args.workers)
        save(args.outdir, "ratio", "ratio", spec(2), r, recs)
        means = ", ".join(f"{h} {m:.1f}" for h, m in r.means.items())
        print(f"\nratios k=2: Swn/S {r.swn_over_s:.4f}, DMwn/DM {r.dmwn_over_dm:.4f}  (means: {means})")

    if "compare" in wanted:
        row, recs = heuristic_comparison(spec(2), args.workers)
        save(args.outdir, "compare", "compare", spec(2), row, recs)
        print(f"\n{'':>8}{'DMwn':>9}{'CS':>9}{'CD':>9}{'B3':>9}")
        print(f"{'mean':>8}" + "".join(f"{row.means[h]:>9.2f}" for h in ("dmwn", "cs", "cd")) + f"{row.b3_mean:>9.2f}")
        print(f"{'max':>8}" + "".join(f"{row.maxima[h]:>9}" for h in ("dmwn", "cs", "cd")))
        print(f"cycle-cap fallbacks {row.cycle_cap_fallbacks}, degenerate {row.degenerate}")


if __name__ == "__main__":
    main()
