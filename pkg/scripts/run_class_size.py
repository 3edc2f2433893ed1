#!/usr/bin/env python3
"""Class-size scaling experiment for the quantum learner.

Fixes (epsilon, delta) and grows the hypothesis class. The budget spent on
each single hypothesis should be affine in log|H| + log(1/delta); the
learner total is |H| times that. Prints both, plus the fitted affine law.

Usage:
    python scripts/run_class_size.py [--epsilon 0.05] [--delta 0.05]
"""
import argparse
import math
import sys
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from qal.learner import learn  # noqa: E402
from qal.problem import random_instance  # noqa: E402


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--epsilon", type=float, default=0.05)
    parser.add_argument("--delta", type=float, default=0.05)
    parser.add_argument("--sizes", type=int, nargs="+", default=[2, 4, 8, 16])
    parser.add_argument("--seed", type=int, default=3)
    args = parser.parse_args()

    budgets = []
    print(f"epsilon={args.epsilon} delta={args.delta}")
    print(f"{'|H|':>5} {'per-hyp samples':>16} {'total samples':>14}")
    for h in args.sizes:
        inst = random_instance(600 + h, x_size=4, y_size=2, h_size=h)
        result = learn(inst, args.epsilon, args.delta, rng=args.seed)
        budgets.append(result.per_hypothesis_samples)
        print(f"{h:>5} {result.per_hypothesis_samples:>16,} {result.total_quantum_samples:>14,}")

    u = np.log(args.sizes) + math.log(1 / args.delta)
    coef = np.polyfit(u, budgets, 1)
    fitted = np.polyval(coef, u)
    rel = float((np.abs(fitted - np.array(budgets)) / np.array(budgets)).max())
    print(
        f"fitted: per-hyp samples =~ {coef[0]:.1f} * (log|H| + log(1/delta)) + {coef[1]:.1f} "
        f"(max relative residual {rel:.1%})"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
