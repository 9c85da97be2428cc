"""Run the per-path verification bundle over every lattice path up to a size.

    python scripts/sweep.py --max-size 6 --trials 500 --workers 4 --json sweep.json

Prints one line per size (a+b) with path counts, failures and the summed
per-path time.
"""

import argparse
import json
import time
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

from nusubdiv.checks import verify_path
from nusubdiv.path import index_path, paths_up_to


@dataclass
class SweepConfig:
    max_size: int = 6
    trials: int = 500
    seed: int = 0
    random_orders: int = 5
    workers: int = 1


def run(cfg: SweepConfig):
    paths = list(paths_up_to(cfg.max_size))

    def one(nu):
        start = time.perf_counter()
        rep = verify_path(index_path(nu), cfg.trials, cfg.seed, cfg.random_orders)
        return rep, time.perf_counter() - start

    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        results = list(pool.map(one, paths))
    return list(zip(paths, results))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(SweepConfig()).items():
        ap.add_argument("--" + name.replace("_", "-"), type=int, default=default)
    ap.add_argument("--json", help="write per-path results here")
    args = ap.parse_args()
    cfg = SweepConfig(**{k: getattr(args, k) for k in asdict(SweepConfig())})

    rows = run(cfg)
    by_size = defaultdict(lambda: [0, 0, 0.0])
    for nu, (rep, secs) in rows:
        stats = by_size[len(nu)]
        stats[0] += 1
        stats[1] += not rep.ok
        stats[2] += secs
    print(f"{'a+b':>4} {'paths':>6} {'failed':>7} {'path-s':>8}")
    for size in sorted(by_size):
        n, bad, secs = by_size[size]
        print(f"{size:>4} {n:>6} {bad:>7} {secs:>8.2f}")
    failed = [(nu.steps, [c.name for c in rep.failures()]) for nu, (rep, _) in rows if not rep.ok]
    for word, names in failed:
        print(f"FAIL {word}: {', '.join(names)}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"config": asdict(cfg), "paths": [rep.to_json() for _, (rep, _) in rows]}, fh, indent=2, sort_keys=True)
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
