"""Experiment harness: learning trials over (method, epsilon, delta) grids.

One CSV row per trial. Success is judged against exact risks, which the
finite model makes computable, so the success column can be recomputed
from the instance file and the chosen hypothesis alone. Per-trial seeds
derive from (base seed, cell index, trial index), making output byte
identical across runs of the same config.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from pathlib import Path

import numpy as np

from .classical import erm_learn
from .engine import CapacityError
from .learner import learn
from .problem import ProblemInstance, ValidationError, exact_statistics, load_instance, random_instance

CSV_HEADER = "instance_id,method,epsilon,delta,trial,samples_used,success,risk_gap,reason"
METHODS = ("quantum", "classical")


@dataclass(frozen=True)
class BenchConfig:
    """One grid run. Exactly one of instance_path / random_spec is set."""

    epsilons: tuple[float, ...]
    deltas: tuple[float, ...]
    trials: int
    base_seed: int
    methods: tuple[str, ...] = METHODS
    engine: str = "analytic"
    instance_path: str | None = None
    random_spec: dict | None = None

    def __post_init__(self):
        if not self.epsilons or not self.deltas:
            raise ValidationError("epsilons/deltas: grids must be nonempty")
        if self.trials < 1:
            raise ValidationError(f"trials: must be >= 1, got {self.trials}")
        if self.base_seed < 0:
            raise ValidationError(f"base_seed: must be >= 0, got {self.base_seed}")
        if not self.methods or any(m not in METHODS for m in self.methods):
            raise ValidationError(f"methods: must be a nonempty subset of {METHODS}, got {self.methods}")
        if (self.instance_path is None) == (self.random_spec is None):
            raise ValidationError("config: exactly one of 'instance' and 'random' must be given")


@dataclass(frozen=True)
class BenchRow:
    instance_id: str
    method: str
    epsilon: float
    delta: float
    trial: int
    samples_used: int
    success: int
    risk_gap: float
    reason: str = ""

    def render(self) -> str:
        return ",".join(
            [
                self.instance_id,
                self.method,
                f"{self.epsilon:.17g}",
                f"{self.delta:.17g}",
                str(self.trial),
                str(self.samples_used),
                str(self.success),
                f"{self.risk_gap:.17g}",
                self.reason,
            ]
        )


def load_bench_config(path: str | Path) -> BenchConfig:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as e:
            raise ValidationError(f"{path}: not valid JSON ({e})") from None
    try:
        return BenchConfig(
            epsilons=tuple(float(e) for e in obj["epsilons"]),
            deltas=tuple(float(d) for d in obj["deltas"]),
            trials=int(obj["trials"]),
            base_seed=int(obj["base_seed"]),
            methods=tuple(obj.get("methods", list(METHODS))),
            engine=obj.get("engine", "analytic"),
            instance_path=obj.get("instance"),
            random_spec=obj.get("random"),
        )
    except KeyError as e:
        raise ValidationError(f"config: missing field {e.args[0]!r}") from None


def resolve_instance(config: BenchConfig) -> tuple[str, ProblemInstance]:
    if config.instance_path is not None:
        return Path(config.instance_path).stem, load_instance(config.instance_path)
    spec = dict(config.random_spec)
    inst = random_instance(
        seed=int(spec["seed"]),
        x_size=int(spec["x_size"]),
        y_size=int(spec["y_size"]),
        h_size=int(spec["h_size"]),
        loss_kind=spec.get("loss_kind", "zero_one"),
    )
    return f"random-{spec['seed']}", inst


def _trial_rng(base_seed: int, cell_index: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([base_seed, cell_index, trial]))


def run_bench(config: BenchConfig, out_path: str | Path) -> list[BenchRow]:
    """Run every grid cell, write the CSV, and return the rows.

    Cells run in deterministic (method, epsilon, delta) order with rows
    buffered per cell, so output does not depend on scheduling.
    """
    instance_id, inst = resolve_instance(config)
    stats = exact_statistics(inst)
    best_risk = stats.risks[stats.best_id]
    rows: list[BenchRow] = []
    cells = list(product(config.methods, config.epsilons, config.deltas))
    for cell_index, (method, epsilon, delta) in enumerate(cells):
        cell_rows = []
        for trial in range(config.trials):
            rng = _trial_rng(config.base_seed, cell_index, trial)
            try:
                if method == "quantum":
                    result = learn(inst, epsilon, delta, rng=rng, engine=config.engine)
                    chosen, samples = result.chosen_id, result.total_quantum_samples
                else:
                    result = erm_learn(inst, epsilon, delta, rng=rng)
                    chosen, samples = result.chosen_id, result.samples_used
                gap = stats.risks[chosen] - best_risk
                cell_rows.append(
                    BenchRow(instance_id, method, epsilon, delta, trial, samples, int(gap <= epsilon), gap)
                )
            except CapacityError as e:
                cell_rows.append(
                    BenchRow(instance_id, method, epsilon, delta, trial, 0, 0, float("nan"), reason=str(e))
                )
        rows.extend(cell_rows)
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with open(out_path, "w", newline="") as fh:
        fh.write(CSV_HEADER + "\n")
        for row in rows:
            fh.write(row.render() + "\n")
    return rows


def fit_loglog_slope(points: list[tuple[float, float]]) -> float:
    """Least-squares slope of log(samples) against log(epsilon)."""
    if len(points) < 3:
        raise ValueError(f"slope fit needs at least 3 points, got {len(points)}")
    eps = np.array([p[0] for p in points], dtype=float)
    samples = np.array([p[1] for p in points], dtype=float)
    if np.any(eps <= 0) or np.any(samples <= 0):
        raise ValueError("slope fit needs strictly positive coordinates")
    if np.all(eps == eps[0]):
        raise ValueError("slope fit is degenerate: all epsilon values are equal")
    return float(np.polyfit(np.log(eps), np.log(samples), 1)[0])


def mean_samples_by_epsilon(rows: list[BenchRow], method: str) -> list[tuple[float, float]]:
    """Aggregate (epsilon, mean samples_used) for one method, skipping failed rows."""
    by_eps: dict[float, list[int]] = {}
    for row in rows:
        if row.method == method and not row.reason:
            by_eps.setdefault(row.epsilon, []).append(row.samples_used)
    return [(eps, float(np.mean(v))) for eps, v in sorted(by_eps.items())]
