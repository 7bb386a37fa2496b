"""Run every check campaign at acceptance scale and write CSV/JSON reports.

    python3 scripts/run_campaigns.py --out reports/full --seed 1 --threads 4
"""

import argparse
import time

from lced.campaigns import LEMMAS, combined_exit_code, default_config, run_campaign

# instance counts and size overrides matching the acceptance gate
SCALE = {
    "dispersion": dict(instances=1000, n_max=200),
    "cycles": dict(instances=200, n_max=60),
    "hiker": dict(instances=1000, n_max=200),
    "counting": dict(instances=300),
    "arboricity": dict(instances=150, n_max=200, s_values=(4, 6, 8, 10), report_ratio=True),
    "dispersal": dict(instances=200),
    "union": dict(instances=200),
    "decomposition": dict(instances=100, n_max=7),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="reports/full")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--only", choices=LEMMAS, action="append")
    args = ap.parse_args()
    results = []
    for lemma in args.only or LEMMAS:
        t0 = time.perf_counter()
        res = run_campaign(default_config(lemma, seed=args.seed, threads=args.threads, **SCALE[lemma]))
        res.write(args.out)
        cal = res.summary.get("calibrated", {})
        print(f"{lemma:14s} pass={res.passed:5d} fail={res.failed} skipped={res.skipped} "
              f"{time.perf_counter() - t0:6.1f}s {cal}")
        results.append(res)
    return combined_exit_code(results)


if __name__ == "__main__":
    raise SystemExit(main())
