import json

import pytest

import frozen
from qfcri.models import Exponential, Govindarajulu, PowerPareto, Uniform
from qfcri.simulation import (
    SimulationPlan,
    count_inversions,
    reference_plan,
    replicate_streams,
    run_plan,
)


def test_plan_validation():
    for bad in ({"sample_sizes": (10, 10)}, {"sample_sizes": (20, 10)}, {"sample_sizes": (0,)},
                {"replications": 0}, {"alpha": 0.0}, {"threads": 0}):
        kw = {"alpha": 0.5, **bad}
        with pytest.raises(ValueError):
            SimulationPlan(Uniform(), Uniform(), **kw)


def test_from_dict():
    plan = SimulationPlan.from_dict({"x": "uniform", "y": "exponential:lambda=2", "alpha": 0.4,
                                     "sample_sizes": [5, 10], "replications": 3})
    assert plan.sample_sizes == (5, 10) and plan.y_model == Exponential(2.0)
    with pytest.raises(ValueError):
        SimulationPlan.from_dict({"x": "uniform", "y": "uniform", "alpha": 0.4, "bogus": 1})


def test_uniform_self_plan():
    plan = SimulationPlan(Uniform(), Uniform(), 1.0, sample_sizes=(10_000,), replications=50)
    rep = run_plan(plan)
    assert rep.true_value == pytest.approx(0.25, rel=1e-9)
    assert rep.rows[0].mean == pytest.approx(0.25, abs=0.02)


@pytest.mark.parametrize(
    "x,y,alpha,key",
    [
        (PowerPareto(1.5, 0.75, 0.25), Exponential(2.0), 0.2, ("powerpareto", 0.2)),
        (PowerPareto(1.5, 0.75, 0.25), Exponential(2.0), 0.5, ("powerpareto", 0.5)),
        (Govindarajulu(0.2, 0.75, 2.0), Uniform(), 0.75, ("govindarajulu", 0.75)),
        (Govindarajulu(0.2, 0.75, 2.0), Uniform(), 0.85, ("govindarajulu", 0.85)),
    ],
)
def test_true_values(x, y, alpha, key):
    plan = SimulationPlan(x, y, alpha, sample_sizes=(5,), replications=1)
    assert run_plan(plan).true_value == pytest.approx(frozen.SIM_TRUE[key], abs=1e-3)


def test_reproducible_and_thread_independent():
    base = dict(sample_sizes=(20, 40), replications=30, base_seed=5)
    p1 = reference_plan("govindarajulu_uniform_a0.75", **base)
    p2 = reference_plan("govindarajulu_uniform_a0.75", threads=4, **base)
    r1, r2 = run_plan(p1), run_plan(p2)
    assert r1.to_csv() == r2.to_csv()
    assert run_plan(p1).rows == r1.rows
    assert run_plan(reference_plan("govindarajulu_uniform_a0.75", **{**base, "base_seed": 6})).rows != r1.rows


def test_streams_are_independent():
    sx, sy = replicate_streams(1, 10, 0)
    assert sx.generate_state(2).tolist() != sy.generate_state(2).tolist()
    assert replicate_streams(1, 10, 0)[0].generate_state(2).tolist() == sx.generate_state(2).tolist()


def test_report_invariants_and_outputs():
    rep = run_plan(reference_plan("powerpareto_exp_a0.2", sample_sizes=(30, 60), replications=40))
    for row in rep.rows:
        assert row.mse >= row.abs_bias**2 - 1e-12
    lines = rep.to_csv().splitlines()
    assert lines[0] == "n,mean,abs_bias,mse" and len(lines) == 3
    d = json.loads(rep.to_json())
    assert d["rows"][0]["n"] == 30 and d["true_value"] == rep.true_value


def test_count_inversions():
    assert count_inversions([3, 2, 2, 1]) == 0
    assert count_inversions([3, 4, 2, 3]) == 2
