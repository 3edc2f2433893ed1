#!/usr/bin/env python3
"""Sample-count scaling experiment: quantum vs classical learner.

Runs both learners over a shrinking accuracy grid on the bundled
squared-loss instance, writes the per-trial CSV, and fits the log-log
slopes. Expected shape: quantum close to -1, classical close to -2.

Usage:
    python scripts/run_separation.py [--out results/separation.csv] [--trials 5]
"""
import argparse
import math
import sys
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from qal.bench import BenchConfig, fit_loglog_slope, mean_samples_by_epsilon, run_bench  # noqa: E402


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(ROOT / "results" / "separation.csv"))
    parser.add_argument("--trials", type=int, default=5)
    parser.add_argument("--base-seed", type=int, default=7)
    args = parser.parse_args()

    config = BenchConfig(
        epsilons=(0.1, 0.05, 0.025, 0.0125),
        deltas=(0.05,),
        trials=args.trials,
        base_seed=args.base_seed,
        methods=("quantum", "classical"),
        engine="analytic",
        instance_path=str(ROOT / "instances" / "separation.json"),
    )
    rows = run_bench(config, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")

    h_size, delta = 4, 0.05
    for method in config.methods:
        points = mean_samples_by_epsilon(rows, method)
        slope = fit_loglog_slope(points)
        if method == "quantum":
            const = np.mean([n * e / (math.log(h_size) + math.log(1 / delta)) for e, n in points])
            law = f"samples =~ {const:.1f} * (log|H| + log(1/delta)) / epsilon"
        else:
            const = np.mean([n * e**2 / math.log(2 * h_size / delta) for e, n in points])
            law = f"samples =~ {const:.1f} * log(2|H|/delta) / epsilon^2"
        print(f"{method:>9}: slope {slope:+.3f}   fitted law: {law}")
        for e, n in points:
            print(f"           epsilon={e:<8g} mean samples={n:,.0f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
