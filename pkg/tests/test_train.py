"""Objective, subgradient, projection, the SGD loop, and secure CV."""
import math

import numpy as np
import pytest

import secsvm
from secsvm import training
from secsvm.errors import DatasetError, DivergenceError
from secsvm.features import Dataset, SampleVector
from secsvm.model import LinearModel
from secsvm.training import (BoundsSpec, DecaySchedule, TrainConfig, objective,
                             project_box, subgradient, train,
                             secure_cross_validate)

from conftest import random_dataset, separable_dataset, toy_space


def model_for(data, w, b):
    return LinearModel(np.asarray(w, dtype=np.float64), b, data.space)


# objective ------------------------------------------------------------------

def test_objective_zero_model_is_C_times_n():
    data = random_dataset(12, 5, seed=0)
    m = model_for(data, np.zeros(5), 0.0)
    assert objective(m, data, 3.0) == 3.0 * 12


def test_objective_separated_margins_is_regularizer_only():
    space = toy_space(2)
    data = Dataset(space, [SampleVector([0], 1), SampleVector([1], -1)])
    m = model_for(data, [2.0, -2.0], 0.0)  # margins are 2 for both samples
    assert objective(m, data, 5.0) == 0.5 * 8.0


def test_objective_matches_naive_loop():
    data = random_dataset(40, 9, seed=1)
    rng = np.random.Generator(np.random.PCG64(2))
    w = rng.normal(size=9)
    b = float(rng.normal())
    m = model_for(data, w, b)
    want = 0.5 * float(w @ w)
    for s in data.samples:
        f = w[s.active].sum() + b
        want += 1.7 * max(0.0, 1.0 - s.label * f)
    got = objective(m, data, 1.7)
    assert abs(got - want) < 1e-12 * max(1.0, abs(want))


# subgradient ----------------------------------------------------------------

def test_subgradient_inactive_hinge():
    space = toy_space(2)
    data = Dataset(space, [SampleVector([0], 1), SampleVector([1], -1)])
    m = model_for(data, [2.0, -2.0], 0.0)
    gw, gb = subgradient(m, data, 4.0)
    assert np.array_equal(gw, m.w)
    assert gb == 0.0


def test_subgradient_single_violator_one_hot():
    space = toy_space(3)
    data = Dataset(space, [SampleVector([1], 1)])
    m = model_for(data, np.zeros(3), 0.0)
    gw, gb = subgradient(m, data, 2.0)
    assert np.array_equal(gw, [0.0, -2.0, 0.0])
    assert gb == -2.0


def test_subgradient_matches_central_differences():
    # 20 random evaluation points kept away from hinge kinks
    rng = np.random.Generator(np.random.PCG64(3))
    data = random_dataset(30, 8, seed=4)
    C = 1.3
    h = 1e-6
    checked = 0
    while checked < 20:
        w = rng.normal(size=8)
        b = float(rng.normal())
        m = model_for(data, w, b)
        margins = np.array([s.label * (w[s.active].sum() + b)
                            for s in data.samples])
        if np.min(np.abs(1.0 - margins)) < 1e-3:
            continue  # too close to a kink for finite differences
        gw, gb = subgradient(m, data, C)
        for k in range(8):
            wp, wm = w.copy(), w.copy()
            wp[k] += h
            wm[k] -= h
            num = (objective(model_for(data, wp, b), data, C)
                   - objective(model_for(data, wm, b), data, C)) / (2 * h)
            assert abs(num - gw[k]) < 1e-5
        num_b = (objective(model_for(data, w, b + h), data, C)
                 - objective(model_for(data, w, b - h), data, C)) / (2 * h)
        assert abs(num_b - gb) < 1e-5
        checked += 1


# project_box ----------------------------------------------------------------

def test_project_box_identity_inside():
    w = np.array([0.1, -0.2])
    out = project_box(w, BoundsSpec.uniform(-0.5, 0.5))
    assert np.array_equal(out, w)


def test_project_box_clamps():
    out = project_box(np.array([5.0, -5.0]), BoundsSpec.uniform(-0.5, 0.5))
    assert np.array_equal(out, [0.5, -0.5])


def test_project_box_is_nearest_point_grid_oracle():
    rng = np.random.Generator(np.random.PCG64(5))
    bounds = BoundsSpec.uniform(-0.3, 0.7)
    grid = np.linspace(-0.3, 0.7, 201)
    for _ in range(5):
        w = rng.normal(size=2) * 2
        proj = project_box(w, bounds)
        gx, gy = np.meshgrid(grid, grid)
        dist = (gx - w[0]) ** 2 + (gy - w[1]) ** 2
        i, j = np.unravel_index(np.argmin(dist), dist.shape)
        best = np.array([gx[i, j], gy[i, j]])
        assert np.linalg.norm(proj - best) < 0.006  # one grid cell


def test_bounds_validation():
    with pytest.raises(ValueError):
        BoundsSpec.uniform(1.0, -1.0).as_arrays(3)
    lb, ub = BoundsSpec.unbounded().as_arrays(2)
    assert np.all(np.isinf(lb)) and np.all(np.isinf(ub))


def test_decay_schedules():
    exp = DecaySchedule("exponential", 0.01)
    assert abs(exp.factor(10, 100) - 2.0 ** (-0.1) / 10.0) < 1e-15
    lin = DecaySchedule("linear", 0.5)
    assert abs(lin.factor(4, 999) - 1.0 / 3.0) < 1e-15
    with pytest.raises(ValueError):
        DecaySchedule("cosine", 0.1)
    with pytest.raises(ValueError):
        DecaySchedule("linear", 0.0)


def test_config_validation():
    with pytest.raises(ValueError):
        TrainConfig(C=0.0)
    with pytest.raises(ValueError):
        TrainConfig(batch_size=0)
    with pytest.raises(ValueError):
        TrainConfig(gamma_grid=())
    with pytest.raises(ValueError):
        TrainConfig(epsilon=0.0)


# train ----------------------------------------------------------------------

def test_train_separable_converges_inside_bounds():
    data = separable_dataset(40, 10, seed=6)
    config = TrainConfig(bounds=BoundsSpec.uniform(-1.0, 1.0), seed=0,
                         epsilon=1e-6, max_iters=2000)
    model, report = train(data, config)
    assert report.converged
    assert np.all(model.w >= -1.0) and np.all(model.w <= 1.0)
    scores = secsvm.decision_scores(model, data)
    predicted = np.where(scores >= 0, 1, -1)
    assert np.array_equal(predicted, data.labels)


def test_train_deterministic_bit_identical():
    data = random_dataset(60, 12, seed=7)
    config = TrainConfig(seed=3, max_iters=300, epsilon=1e-9)
    m1, r1 = train(data, config)
    m2, r2 = train(data, config)
    assert np.array_equal(m1.w, m2.w)
    assert m1.b == m2.b
    assert r1.objective_trace == r2.objective_trace


def test_train_seed_changes_model():
    data = random_dataset(60, 12, seed=7)
    m1, _ = train(data, TrainConfig(seed=3, max_iters=100, epsilon=1e-12))
    m2, _ = train(data, TrainConfig(seed=4, max_iters=100, epsilon=1e-12))
    assert not np.array_equal(m1.w, m2.w)


def test_train_single_class_is_error():
    space = toy_space(3)
    data = Dataset(space, [SampleVector([0], 1), SampleVector([1], 1)])
    with pytest.raises(DatasetError):
        train(data, TrainConfig())


def test_train_divergence_is_error():
    # a runaway step size inflates w until the objective overflows
    data = separable_dataset(20, 6, seed=8)
    config = TrainConfig(eta0=1e150, gamma_grid=(1e150,), epsilon=1e-300,
                         max_iters=50, seed=0, line_search_full=False)
    with pytest.raises(DivergenceError):
        train(data, config)


def test_train_report_invariants():
    data = random_dataset(50, 8, seed=9)
    config = TrainConfig(seed=1, epsilon=1e-5, max_iters=500)
    model, report = train(data, config)
    assert len(report.objective_trace) == report.iterations + 1
    if report.converged:
        assert abs(report.objective_trace[-1] - report.objective_trace[-2]) < 1e-5
    # running minimum never increases
    run_min = np.minimum.accumulate(report.objective_trace)
    assert np.all(np.diff(run_min) <= 0)


def test_line_search_picks_grid_argmin():
    data = random_dataset(40, 6, seed=10)
    seen = []

    def hook(state):
        seen.append(state)

    config = TrainConfig(seed=2, max_iters=30, epsilon=1e-12)
    train(data, config, iteration_hook=hook)
    assert len(seen) == 30
    for state in seen:
        assert len(state.gamma_objectives) == len(config.gamma_grid)
        chosen = config.gamma_grid.index(state.gamma)
        assert state.gamma_objectives[chosen] == min(state.gamma_objectives)


def test_batches_cover_each_epoch_without_replacement():
    # every row is visited exactly once per epoch
    rng = np.random.Generator(np.random.PCG64(11))
    batcher = training._EpochBatcher(25, 8, rng)
    for _ in range(3):
        epoch_rows = np.concatenate([batcher.next() for _ in range(4)])
        assert sorted(epoch_rows.tolist()) == list(range(25))


def test_unbounded_bounds_equal_flag_default():
    data = random_dataset(40, 6, seed=12)
    m1, _ = train(data, TrainConfig(seed=5, max_iters=200))
    m2, _ = train(data, TrainConfig(bounds=BoundsSpec.unbounded(), seed=5,
                                    max_iters=200))
    assert np.array_equal(m1.w, m2.w) and m1.b == m2.b


# secure cross-validation ----------------------------------------------------

def seccv_dataset():
    return separable_dataset(60, 8, seed=13)


def test_seccv_single_config_returned():
    data = seccv_dataset()
    config = TrainConfig(bounds=BoundsSpec.uniform(-0.5, 0.5), seed=0,
                         max_iters=150, epsilon=1e-5, line_search_full=False)
    best, rows = secure_cross_validate(data, [config], folds=3, budget=2,
                                       lam=0.01)
    assert best is config
    assert len(rows) == 3
    for row in rows:
        assert set(row) == {"config_id", "fold", "A", "S", "r"}
        assert abs(row["r"] - (row["A"] + 0.01 * row["S"])) < 1e-12


def test_seccv_lambda_zero_matches_plain_cv():
    data = seccv_dataset()
    grid = [TrainConfig(bounds=BoundsSpec.uniform(-ub, ub), seed=0,
                        max_iters=150, epsilon=1e-5, line_search_full=False)
            for ub in (0.02, 0.5)]
    best, rows = secure_cross_validate(data, grid, folds=3, budget=2, lam=0.0)
    mean_A = {}
    for row in rows:
        mean_A.setdefault(row["config_id"], []).append(row["A"])
        assert row["r"] == row["A"]
    oracle = max(mean_A, key=lambda c: np.mean(mean_A[c]))
    assert best is grid[oracle]


def test_seccv_deterministic():
    data = seccv_dataset()
    grid = [TrainConfig(bounds=BoundsSpec.uniform(-0.3, 0.3), seed=0,
                        max_iters=100, epsilon=1e-4, line_search_full=False)]
    _, rows1 = secure_cross_validate(data, grid, folds=3, budget=2, lam=0.5)
    _, rows2 = secure_cross_validate(data, grid, folds=3, budget=2, lam=0.5)
    assert rows1 == rows2


def test_seccv_fold_missing_class_is_error():
    space = toy_space(4)
    samples = [SampleVector([0], 1)] + [SampleVector([2], -1)] * 11
    data = Dataset(space, samples)
    with pytest.raises(DatasetError):
        secure_cross_validate(data, [TrainConfig(max_iters=20)], folds=4,
                              budget=1, lam=0.01)


def test_seccv_validates_arguments():
    data = seccv_dataset()
    with pytest.raises(ValueError):
        secure_cross_validate(data, [], folds=3, budget=2, lam=0.1)
    with pytest.raises(ValueError):
        secure_cross_validate(data, [TrainConfig()], folds=1, budget=2, lam=0.1)
    with pytest.raises(ValueError):
        secure_cross_validate(data, [TrainConfig()], folds=3, budget=0, lam=0.1)
