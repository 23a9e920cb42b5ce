"""Run every randomized suite and write one JSON-lines file per suite.

    python3 scripts/run_suites.py --trials 200 --seed 42 --out results/
"""
from __future__ import annotations

import argparse
import json
import time
from pathlib import Path

from tamegamma.suites import SUITES, SuiteConfig, run_suite


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--qmax", type=int, default=9)
    ap.add_argument("--dimmax", type=int, default=6)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--suites", nargs="*", default=list(SUITES))
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()

    cfg = SuiteConfig(qmax=args.qmax, dimmax=args.dimmax)
    args.out.mkdir(parents=True, exist_ok=True)
    for suite in args.suites:
        trials = 0 if suite == "interpolation" else args.trials
        t0 = time.perf_counter()
        recs = run_suite(suite, trials, seed=args.seed, cfg=cfg, workers=args.workers)
        elapsed = time.perf_counter() - t0
        with open(args.out / f"{suite}.jsonl", "w") as fh:
            for r in recs:
                fh.write(json.dumps(r, default=str) + "\n")
        ok = sum(bool(r["pass"]) for r in recs)
        print(f"{suite:17s} {ok}/{len(recs)} pass  {elapsed:.1f} s")


if __name__ == "__main__":
    main()
