"""Scrambling sweep over a seeded batch of random functions.

Writes the batch as PLA files, runs the bench for every (mode, scramble)
combination and stores one CSV series per combination.  The two BDD input
series correspond to the with/without-knowledge embedding columns; the
``pct_ancilla_recovered`` column gives the recovery-versus-scrambling curve.

    python scripts/sweep.py --out results/ [--count 40] [--seed 7] [--jobs 4]
"""
from __future__ import annotations

import argparse
import logging
from pathlib import Path

from revsec.bench import BenchOptions, rows_to_csv, run_bench
from revsec.formats import pla_write
from revsec.function import seeded_suite


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--pla-dir", type=Path, help="use these PLA files instead of a generated batch")
    ap.add_argument("--count", type=int, default=40)
    ap.add_argument("--suite-seed", type=int, default=2024)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--max-inputs", type=int, default=6)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--modes", default="bdd,func")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")

    args.out.mkdir(parents=True, exist_ok=True)
    pla_dir = args.pla_dir
    if pla_dir is None:
        pla_dir = args.out / "pla"
        pla_dir.mkdir(exist_ok=True)
        for i, f in enumerate(seeded_suite(args.count, args.suite_seed, max_inputs=args.max_inputs)):
            (pla_dir / f"rnd{i:03d}_{f.num_inputs}in.pla").write_text(pla_write(f))

    for mode in args.modes.split(","):
        for scramble in ("inputs", "outputs"):
            opts = BenchOptions(mode=mode, scramble=scramble, seed=args.seed)
            res = run_bench(pla_dir, opts, jobs=args.jobs)
            path = args.out / f"{mode}_{scramble}.csv"
            path.write_text(rows_to_csv(res.rows))
            logging.info("%s: %d rows, %d skipped", path, len(res.rows), len(res.skipped))
            summary = {}
            for r in res.rows:
                summary.setdefault(r.ratio, []).append(r.pct_ancilla_recovered)
            for ratio, vals in sorted(summary.items()):
                logging.info("  ratio %.1f: mean ancilla recovery %.1f%%", ratio, sum(vals) / len(vals))


if __name__ == "__main__":
    main()
