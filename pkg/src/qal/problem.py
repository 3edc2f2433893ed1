"""Finite learning problems with exactly computable ground truth.

A problem instance is a discrete joint distribution over (x, y) pairs, a
finite class of hypothesis tables, and a bounded loss. Every quantity the
rest of the package estimates (risks, the regression function, the noise
variance) is a finite sum here, so it can be computed exactly and used as
an oracle.

Support points carry a dense code 0..len(support)-1; the data register of
the quantum engine indexes basis states by that code.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

PROB_SUM_TOL = 1e-12

LOSS_KINDS = ("zero_one", "squared", "table")


class ValidationError(ValueError):
    """An instance or loss specification violates its contract.

    Messages start with the offending field path, e.g. "support[*].p: ...".
    """


@dataclass(frozen=True)
class SupportPoint:
    """One atom of the joint distribution: x code, y code, y value, mass."""

    x: int
    y_index: int
    y: float
    p: float


@dataclass(frozen=True)
class Hypothesis:
    """A candidate predictor given as a total table over x codes."""

    id: str
    table: tuple[float, ...]

    def value(self, x: int) -> float:
        return self.table[x]


@dataclass(frozen=True)
class LossSpec:
    """Bounded nonnegative loss.

    kind "zero_one" is the exact-mismatch indicator, "squared" is
    (f(x) - y)^2, "table" looks values up per (hypothesis id, x, y_index).
    Evaluated values are raw values divided by `scale`; rescaling to bound
    one is expressed by moving the old bound into `scale`.
    """

    kind: str
    bound: float
    table: dict[str, tuple[tuple[float, ...], ...]] | None = None
    scale: float = 1.0

    def raw_value(self, f: Hypothesis, z: SupportPoint) -> float:
        if self.kind == "zero_one":
            return 1.0 if f.table[z.x] != z.y else 0.0
        if self.kind == "squared":
            d = f.table[z.x] - z.y
            return d * d
        if self.kind == "table":
            per_hyp = self.table.get(f.id) if self.table else None
            if per_hyp is None:
                raise ValidationError(f"loss.table: no entry for hypothesis {f.id!r}")
            try:
                return per_hyp[z.x][z.y_index]
            except IndexError:
                raise ValidationError(
                    f"loss.table[{f.id!r}]: missing entry for (x={z.x}, y_index={z.y_index})"
                ) from None
        raise ValidationError(f"loss.kind: unknown kind {self.kind!r}")


@dataclass(frozen=True)
class ProblemInstance:
    """Joint distribution, hypothesis class, and loss, all finite."""

    x_size: int
    y_values: tuple[float, ...]
    k: int
    support: tuple[SupportPoint, ...]
    hypotheses: tuple[Hypothesis, ...]
    loss: LossSpec

    def hypothesis(self, hyp_id: str) -> Hypothesis:
        for f in self.hypotheses:
            if f.id == hyp_id:
                return f
        raise ValidationError(f"hypotheses: unknown hypothesis id {hyp_id!r}")

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([z.p for z in self.support])


@dataclass(frozen=True)
class ExactStatistics:
    """Ground-truth summaries of an instance, all exact finite sums."""

    regression: dict[int, float]
    noise_variance: float
    risks: dict[str, float]
    best_id: str


def loss_value(loss: LossSpec, f: Hypothesis, z: SupportPoint) -> float:
    """Evaluate the (possibly rescaled) loss of hypothesis f at support point z."""
    return loss.raw_value(f, z) / loss.scale


def rescale_loss(loss: LossSpec) -> tuple[LossSpec, float]:
    """Return an equivalent loss with bound one, plus the factor divided out.

    Estimates on the rescaled scale map back via mu = factor * a.
    """
    if loss.bound <= 0:
        raise ValidationError(f"loss.bound: must be positive, got {loss.bound}")
    factor = loss.bound
    return replace(loss, bound=1.0, scale=loss.scale * factor), factor


def exact_risk(inst: ProblemInstance, f: Hypothesis | str) -> float:
    """Expected loss of f under the instance distribution (exact finite sum)."""
    if isinstance(f, str):
        f = inst.hypothesis(f)
    return float(sum(z.p * loss_value(inst.loss, f, z) for z in inst.support))


def best_hypothesis(inst: ProblemInstance) -> str:
    """Id of the exact-risk minimizer; ties broken by lowest list index."""
    if not inst.hypotheses:
        raise ValidationError("hypotheses: empty hypothesis class")
    risks = [exact_risk(inst, f) for f in inst.hypotheses]
    return inst.hypotheses[int(np.argmin(risks))].id


def regression_and_variance(inst: ProblemInstance) -> tuple[dict[int, float], float]:
    """Conditional mean of y given x, and the expected conditional variance.

    x codes with zero marginal mass are omitted from the map: the
    conditional mean is undefined there.
    """
    marginal: dict[int, float] = {}
    first_moment: dict[int, float] = {}
    for z in inst.support:
        marginal[z.x] = marginal.get(z.x, 0.0) + z.p
        first_moment[z.x] = first_moment.get(z.x, 0.0) + z.p * z.y
    regression = {x: first_moment[x] / m for x, m in marginal.items() if m > 0.0}
    variance = sum(z.p * (z.y - regression[z.x]) ** 2 for z in inst.support if z.x in regression)
    return regression, float(variance)


def squared_risk_decomposition(inst: ProblemInstance, f: Hypothesis | str) -> tuple[float, float]:
    """Split the squared risk into approximation and noise terms.

    Returns (risk, bias_term + noise_variance); the two sides agree exactly
    for any bounded table, which callers assert to 1e-12.
    """
    if inst.loss.kind != "squared":
        raise ValidationError(f"loss.kind: decomposition needs a squared loss, got {inst.loss.kind!r}")
    if isinstance(f, str):
        f = inst.hypothesis(f)
    lhs = exact_risk(inst, f)
    regression, noise = regression_and_variance(inst)
    marginal: dict[int, float] = {}
    for z in inst.support:
        marginal[z.x] = marginal.get(z.x, 0.0) + z.p
    bias = sum(m * (f.table[x] - regression[x]) ** 2 for x, m in marginal.items() if x in regression)
    return lhs, float(bias + noise) / inst.loss.scale


def exact_statistics(inst: ProblemInstance) -> ExactStatistics:
    """Assemble every ground-truth summary in one pass."""
    regression, noise = regression_and_variance(inst)
    risks = {f.id: exact_risk(inst, f) for f in inst.hypotheses}
    return ExactStatistics(regression, noise, risks, best_hypothesis(inst))


def make_instance(
    x_size: int,
    y_values: list[float],
    k: int,
    support: list[tuple[int, int, float]],
    hypotheses: list[tuple[str, list[float]]],
    loss: LossSpec,
) -> ProblemInstance:
    """Validate raw parts, renormalize probabilities exactly, and freeze."""
    if x_size < 1:
        raise ValidationError(f"x_size: must be >= 1, got {x_size}")
    if not y_values:
        raise ValidationError("y_values: must be nonempty")
    if k < 1:
        raise ValidationError(f"k: must be >= 1, got {k}")
    if 2**k < len(support):
        raise ValidationError(f"k: 2^{k} = {2**k} cannot hold {len(support)} coded support points")

    seen: set[tuple[int, int]] = set()
    total = 0.0
    for i, (x, yi, p) in enumerate(support):
        if not 0 <= x < x_size:
            raise ValidationError(f"support[{i}].x: {x} outside 0..{x_size - 1}")
        if not 0 <= yi < len(y_values):
            raise ValidationError(f"support[{i}].y: {yi} outside 0..{len(y_values) - 1}")
        if p < 0:
            raise ValidationError(f"support[{i}].p: negative probability {p}")
        if (x, yi) in seen:
            raise ValidationError(f"support[{i}]: duplicate pair (x={x}, y={yi})")
        seen.add((x, yi))
        total += p
    if abs(total - 1.0) > PROB_SUM_TOL:
        raise ValidationError(f"support[*].p: probabilities sum to {total!r}, expected 1 within {PROB_SUM_TOL}")

    # Renormalize exactly so sqrt(p) amplitudes form a unit vector.
    points = tuple(
        SupportPoint(x=x, y_index=yi, y=float(y_values[yi]), p=p / total) for x, yi, p in support
    )

    ids = [hid for hid, _ in hypotheses]
    if len(set(ids)) != len(ids):
        raise ValidationError("hypotheses[*].id: ids must be distinct")
    hyps = []
    for j, (hid, table) in enumerate(hypotheses):
        if len(table) != x_size:
            raise ValidationError(f"hypotheses[{j}].table: length {len(table)} != x_size {x_size}")
        if not all(math.isfinite(v) for v in table):
            raise ValidationError(f"hypotheses[{j}].table: non-finite value")
        hyps.append(Hypothesis(id=str(hid), table=tuple(float(v) for v in table)))

    if loss.kind not in LOSS_KINDS:
        raise ValidationError(f"loss.kind: unknown kind {loss.kind!r}")
    if loss.bound <= 0 or not math.isfinite(loss.bound):
        raise ValidationError(f"loss.bound: must be a positive finite real, got {loss.bound}")
    if loss.kind == "table" and loss.table is None:
        raise ValidationError("loss.table: required for kind 'table'")

    inst = ProblemInstance(
        x_size=x_size,
        y_values=tuple(float(y) for y in y_values),
        k=k,
        support=points,
        hypotheses=tuple(hyps),
        loss=loss,
    )
    for f in inst.hypotheses:
        for z in inst.support:
            v = loss_value(inst.loss, f, z)
            if not 0.0 <= v <= inst.loss.bound:
                raise ValidationError(
                    f"loss: value {v} for (hypothesis={f.id!r}, x={z.x}, y_index={z.y_index}) "
                    f"outside [0, {inst.loss.bound}]"
                )
    return inst


def _loss_from_json(obj: dict) -> LossSpec:
    kind = obj.get("kind")
    table = obj.get("table")
    if table is not None:
        table = {str(hid): tuple(tuple(float(v) for v in row) for row in rows) for hid, rows in table.items()}
    return LossSpec(kind=kind, bound=float(obj.get("bound", 0.0)), table=table)


def load_instance(path: str | Path) -> ProblemInstance:
    """Load and validate an instance from its JSON file format."""
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as e:
            raise ValidationError(f"{path}: not valid JSON ({e})") from None
    try:
        return make_instance(
            x_size=int(obj["x_size"]),
            y_values=[float(v) for v in obj["y_values"]],
            k=int(obj["k"]),
            support=[(int(s["x"]), int(s["y"]), float(s["p"])) for s in obj["support"]],
            hypotheses=[(h["id"], [float(v) for v in h["table"]]) for h in obj["hypotheses"]],
            loss=_loss_from_json(obj["loss"]),
        )
    except KeyError as e:
        raise ValidationError(f"missing field {e.args[0]!r}") from None


def save_instance(inst: ProblemInstance, path: str | Path) -> None:
    """Write an instance back to its JSON file format."""
    loss_obj: dict = {"kind": inst.loss.kind, "bound": inst.loss.bound}
    if inst.loss.table is not None:
        loss_obj["table"] = {h: [list(r) for r in rows] for h, rows in inst.loss.table.items()}
    obj = {
        "x_size": inst.x_size,
        "y_values": list(inst.y_values),
        "k": inst.k,
        "support": [{"x": z.x, "y": z.y_index, "p": z.p} for z in inst.support],
        "hypotheses": [{"id": f.id, "table": list(f.table)} for f in inst.hypotheses],
        "loss": loss_obj,
    }
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")


def random_instance(
    seed: int,
    x_size: int,
    y_size: int,
    h_size: int,
    loss_kind: str = "zero_one",
) -> ProblemInstance:
    """Deterministic random instance over the full (x, y) grid.

    zero_one instances draw y values and tables from a shared integer
    codomain so mismatches occur; squared instances use values in [-1, 1]
    and set the bound to the exact maximum loss.
    """
    if min(x_size, y_size, h_size) < 1:
        raise ValidationError("random_instance: x_size, y_size, h_size must be >= 1")
    rng = np.random.default_rng(seed)
    n = x_size * y_size
    probs = rng.uniform(0.05, 1.0, n)
    probs = probs / probs.sum()
    support = [(x, yi, float(probs[x * y_size + yi])) for x in range(x_size) for yi in range(y_size)]
    k = max(1, math.ceil(math.log2(n)))

    if loss_kind == "zero_one":
        y_values = [float(i) for i in range(y_size)]
        hyps = [
            (f"h{j}", [float(rng.integers(0, y_size)) for _ in range(x_size)])
            for j in range(h_size)
        ]
        loss = LossSpec(kind="zero_one", bound=1.0)
    elif loss_kind == "squared":
        y_values = sorted(float(v) for v in rng.uniform(-1.0, 1.0, y_size))
        hyps = [(f"h{j}", [float(v) for v in rng.uniform(-1.0, 1.0, x_size)]) for j in range(h_size)]
        worst = max((t[x] - y) ** 2 for _, t in hyps for x in range(x_size) for y in y_values)
        loss = LossSpec(kind="squared", bound=worst if worst > 0 else 1.0)
    else:
        raise ValidationError(f"random_instance: unsupported loss kind {loss_kind!r}")
    return make_instance(x_size, y_values, k, support, hyps, loss)


def demo_instance() -> ProblemInstance:
    """The small two-feature instance used throughout the docs and checks."""
    return make_instance(
        x_size=2,
        y_values=[0.0, 1.0],
        k=2,
        support=[(0, 0, 0.3), (0, 1, 0.2), (1, 0, 0.1), (1, 1, 0.4)],
        hypotheses=[
            ("identity", [0.0, 1.0]),
            ("flip", [1.0, 0.0]),
            ("const0", [0.0, 0.0]),
            ("const1", [1.0, 1.0]),
        ],
        loss=LossSpec(kind="zero_one", bound=1.0),
    )
