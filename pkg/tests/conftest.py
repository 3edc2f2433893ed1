import sys
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO_ROOT / "src"))

from qal.problem import LossSpec, demo_instance, load_instance, make_instance  # noqa: E402


def table_loss_instance(probs, values_by_hyp, bound):
    """Two-x/two-y instance with explicit per-hypothesis loss tables.

    values_by_hyp maps hypothesis id to a 2x2 nested list indexed (x, y).
    """
    hyp_ids = sorted(values_by_hyp)
    return make_instance(
        x_size=2,
        y_values=[0.0, 1.0],
        k=2,
        support=[(0, 0, probs[0]), (0, 1, probs[1]), (1, 0, probs[2]), (1, 1, probs[3])],
        hypotheses=[(h, [0.0, 0.0]) for h in hyp_ids],
        loss=LossSpec(
            kind="table",
            bound=bound,
            table={h: tuple(tuple(float(v) for v in row) for row in values_by_hyp[h]) for h in hyp_ids},
        ),
    )


def constant_loss_instance(value, probs=(0.5, 0.5)):
    """Two-point instance whose rescaled loss is `value` everywhere."""
    return make_instance(
        x_size=2,
        y_values=[0.0],
        k=1,
        support=[(0, 0, probs[0]), (1, 0, probs[1])],
        hypotheses=[("f", [0.0, 0.0])],
        loss=LossSpec("table", 1.0, table={"f": ((value,), (value,))}),
    )


def half_amplitude_instance():
    """Uniform two-point support with losses (0, 1): amplitude exactly 1/2."""
    return make_instance(
        x_size=2,
        y_values=[0.0],
        k=1,
        support=[(0, 0, 0.5), (1, 0, 0.5)],
        hypotheses=[("f", [0.0, 0.0])],
        loss=LossSpec("table", 1.0, table={"f": ((0.0,), (1.0,))}),
    )


def constant_risk_class(risks, probs=(0.3, 0.2, 0.1, 0.4)):
    """Instance whose hypotheses have the given exact risks (unit bound)."""
    values = {hid: [[v, v], [v, v]] for hid, v in risks.items()}
    return table_loss_instance(probs, values, bound=1.0)


@pytest.fixture(scope="session")
def repo_root() -> Path:
    return REPO_ROOT


@pytest.fixture(scope="session")
def demo2():
    return demo_instance()


@pytest.fixture(scope="session")
def separation_instance(repo_root):
    return load_instance(repo_root / "instances" / "separation.json")
