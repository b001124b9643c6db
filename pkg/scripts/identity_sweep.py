"""Sweep the full identity battery over seeded scenarios and report how the
worst residual of each check scales with model size.

Usage:
    python3 scripts/identity_sweep.py --dims 2 4 8 12 --defs 1 2 3 --seeds 5
"""

import argparse
import sys
import time

from kreinkit import cli


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 4, 8, 12])
    ap.add_argument("--defs", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--seeds", type=int, default=3,
                    help="seeds 0..seeds-1 per shape")
    ap.add_argument("--tol", type=float, default=None,
                    help="override the scenario tolerance")
    args = ap.parse_args(argv)

    worst = {}   # check name -> (residual, dim, deficiency, seed)
    count = 0
    failed = 0
    started = time.perf_counter()
    for dim in args.dims:
        for deficiency in args.defs:
            if deficiency > dim:
                continue
            for seed in range(args.seeds):
                scenario = cli.generate_scenario(dim, deficiency, seed)
                report = cli.run_checks(scenario, tol_override=args.tol)
                count += 1
                if report["summary"] != "pass":
                    failed += 1
                for rec in report["checks"]:
                    r = rec["max_residual"]
                    if r < 0.0:
                        # error sentinel: surface it as a failure
                        print(f"error in {rec['name']} at dim={dim} "
                              f"n={deficiency} seed={seed}: {rec['note']}")
                        failed += 1
                        continue
                    if rec["name"] not in worst or r > worst[rec["name"]][0]:
                        worst[rec["name"]] = (r, dim, deficiency, seed)
    elapsed = time.perf_counter() - started

    name_width = max(len(k) for k in worst) if worst else 10
    print(f"{'check':<{name_width}}  {'worst residual':>14}  at (dim, n, seed)")
    for name in sorted(worst):
        r, dim, deficiency, seed = worst[name]
        print(f"{name:<{name_width}}  {r:>14.3e}  ({dim}, {deficiency}, {seed})")
    print(f"\n{count} scenarios, {failed} failed, {elapsed:.2f} s")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
