"""Box-constrained hinge-loss training by stochastic subgradient descent.

The learner minimizes

    L(w, b) = 0.5 ||w||^2 + C * sum_i max(0, 1 - y_i (w·x_i + b))

subject to per-feature box constraints lb_k <= w_k <= ub_k (the bias is
unconstrained). Each iteration takes a without-replacement mini-batch, forms
the batch subgradient, line-searches a step-size multiplier over a fixed grid
(evaluating the projected candidate), commits the best candidate, and tracks
the full-dataset objective; training stops when the objective trace settles
within epsilon. Unbounded boxes (lb=-inf, ub=+inf) recover a plain SVM; there
is only this one code path.

secure_cross_validate picks box bounds by k-fold cross-validation on the
accuracy-plus-security score r = A + lambda * S, where A is the clean
detection rate at the target false-positive rate and S averages the detection
rate under simulated evasion at budgets 1..M.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import backends, csr
from .errors import DatasetError, DivergenceError
from .features import MALWARE, BENIGN
from .model import LinearModel

DEFAULT_GAMMA_GRID = (10.0, 20.0, 30.0, 40.0, 50.0, 60.0, 70.0)
DEFAULT_MAX_ITERS = 4000


@dataclass(frozen=True)
class BoundsSpec:
    """Per-feature weight box; scalars broadcast over the dimension."""

    lb: object = float("-inf")
    ub: object = float("inf")

    @classmethod
    def unbounded(cls):
        return cls()

    @classmethod
    def uniform(cls, lb, ub):
        return cls(float(lb), float(ub))

    def as_arrays(self, d):
        lb = np.broadcast_to(np.asarray(self.lb, dtype=np.float64), (d,)).copy()
        ub = np.broadcast_to(np.asarray(self.ub, dtype=np.float64), (d,)).copy()
        if np.any(np.isnan(lb)) or np.any(np.isnan(ub)):
            raise ValueError("bounds must not be NaN")
        if np.any(lb > ub):
            raise ValueError("lower bound exceeds upper bound")
        return lb, ub


@dataclass(frozen=True)
class DecaySchedule:
    """Step-size decay s(t): exponential 2^(-a*t)/sqrt(n) or linear 1/(1+a*t)."""

    name: str = "exponential"
    a: float = 0.01

    def __post_init__(self):
        if self.name not in ("exponential", "linear"):
            raise ValueError(f"unknown decay schedule {self.name!r}")
        if self.a <= 0:
            raise ValueError("decay rate must be positive")

    def factor(self, t, n):
        if self.name == "exponential":
            return 2.0 ** (-self.a * t) / math.sqrt(n)
        return 1.0 / (1.0 + self.a * t)


@dataclass(frozen=True)
class TrainConfig:
    C: float = 1.0
    bounds: BoundsSpec = field(default_factory=BoundsSpec.unbounded)
    batch_size: int = 32
    eta0: float = 0.5
    gamma_grid: tuple = DEFAULT_GAMMA_GRID
    decay: DecaySchedule = field(default_factory=DecaySchedule)
    epsilon: float = 1e-4
    max_iters: int | None = None  # None -> DEFAULT_MAX_ITERS safety cap
    seed: int = 0
    line_search_full: bool = True  # batch-only evaluation is cheaper but noisier

    def __post_init__(self):
        if self.C <= 0:
            raise ValueError("C must be positive")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.eta0 <= 0:
            raise ValueError("eta0 must be positive")
        if not self.gamma_grid or any(g <= 0 for g in self.gamma_grid):
            raise ValueError("gamma_grid must be non-empty and positive")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.max_iters is not None and self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")


@dataclass
class TrainReport:
    objective_trace: list
    iterations: int
    converged: bool


@dataclass(frozen=True)
class IterationState:
    """Snapshot handed to the iteration hook after each committed step."""

    t: int
    w: np.ndarray
    b: float
    objective: float
    gamma: float
    gamma_objectives: tuple


def objective(model, data, C):
    """Full-dataset value of the regularized hinge objective."""
    indices, indptr = data.matrix()
    y = data.labels.astype(np.float64)
    return float(backends.hinge_objective(indices, indptr, y, model.w, model.b, C))


def subgradient(model, batch, C):
    """(grad_w, grad_b) of the objective restricted to the given samples."""
    indices, indptr = batch.matrix()
    y = batch.labels.astype(np.float64)
    gw, gb = backends.hinge_subgradient(indices, indptr, y, model.w, model.b, C)
    return gw, float(gb)


def project_box(w, bounds):
    """Euclidean projection onto the box (componentwise clip)."""
    lb, ub = bounds.as_arrays(len(w))
    return np.clip(w, lb, ub)


def _require_both_classes(data, what="training data"):
    n_mal, n_ben = data.class_counts()
    if n_mal == 0 or n_ben == 0:
        raise DatasetError(f"{what} must contain both classes "
                           f"(+1: {n_mal}, -1: {n_ben})")


def _initial_weights(rng, lb, ub):
    """Uniform draw from the box intersected with [-0.1, 0.1] per coordinate.

    Coordinates whose box lies entirely outside [-0.1, 0.1] fall back to a
    small uniform range clamped inside the box.
    """
    lo = np.maximum(lb, -0.1)
    hi = np.minimum(ub, 0.1)
    bad = lo > hi
    if np.any(bad):
        above = bad & (lb > 0.1)
        lo[above] = lb[above]
        hi[above] = np.minimum(ub[above], lb[above] + 0.2)
        below = bad & (ub < -0.1)
        hi[below] = ub[below]
        lo[below] = np.maximum(lb[below], ub[below] - 0.2)
    return rng.uniform(lo, hi)


class _EpochBatcher:
    """Without-replacement mini-batches; reshuffles each epoch, keeps the tail."""

    def __init__(self, n, batch_size, rng):
        self.n = n
        self.batch_size = min(batch_size, n)
        self.rng = rng
        self.perm = None
        self.pos = 0

    def next(self):
        if self.perm is None or self.pos >= self.n:
            self.perm = self.rng.permutation(self.n)
            self.pos = 0
        rows = self.perm[self.pos:self.pos + self.batch_size]
        self.pos += self.batch_size
        return rows


def train(data, config, iteration_hook=None):
    """Run the bounded SGD learner; returns (LinearModel, TrainReport)."""
    _require_both_classes(data)
    n = data.n
    d = data.space.dimension
    C = float(config.C)
    lb, ub = config.bounds.as_arrays(d)
    indices, indptr = data.matrix()
    y = data.labels.astype(np.float64)

    rng = np.random.Generator(np.random.PCG64(config.seed))
    w = _initial_weights(rng, lb, ub)
    b = 0.0

    max_iters = config.max_iters
    if max_iters is None:
        max_iters = DEFAULT_MAX_ITERS

    L = float(backends.hinge_objective(indices, indptr, y, w, b, C))
    if not math.isfinite(L):
        raise DivergenceError(f"objective is non-finite at initialization ({L})")
    trace = [L]
    batcher = _EpochBatcher(n, config.batch_size, rng)
    converged = False
    iterations = 0

    for t in range(1, max_iters + 1):
        rows = batcher.next()
        b_indices, b_indptr = csr.take_rows(indices, indptr, rows)
        b_y = y[rows]
        gw, gb = backends.hinge_subgradient(b_indices, b_indptr, b_y, w, b, C)

        if config.line_search_full:
            ls_indices, ls_indptr, ls_y = indices, indptr, y
        else:
            ls_indices, ls_indptr, ls_y = b_indices, b_indptr, b_y

        s_t = config.decay.factor(t, n)
        best = None
        gamma_objectives = []
        for gamma in config.gamma_grid:
            eta = gamma * config.eta0 * s_t
            w_c = np.clip(w - eta * gw, lb, ub)
            b_c = b - eta * gb
            L_c = float(backends.hinge_objective(ls_indices, ls_indptr, ls_y, w_c, b_c, C))
            gamma_objectives.append(L_c)
            if best is None or L_c < best[0]:
                best = (L_c, gamma, w_c, b_c)

        _, gamma, w, b = best
        L = float(backends.hinge_objective(indices, indptr, y, w, b, C))
        if not math.isfinite(L):
            raise DivergenceError(f"objective diverged at iteration {t} ({L})")
        trace.append(L)
        iterations = t
        if iteration_hook is not None:
            iteration_hook(IterationState(
                t=t, w=w.copy(), b=b, objective=L,
                gamma=gamma, gamma_objectives=tuple(gamma_objectives),
            ))
        if abs(trace[-1] - trace[-2]) < config.epsilon:
            converged = True
            break

    return LinearModel(w, b, data.space), TrainReport(trace, iterations, converged)


def _fold_rows(n, folds, seed):
    perm = np.random.Generator(np.random.PCG64(seed)).permutation(n)
    return [np.sort(part) for part in np.array_split(perm, folds)]


def secure_cross_validate(data, grid, folds, budget, lam, attack_spec=None, *,
                          target_fpr=0.01, seed=0, iteration_hook=None):
    """Pick the grid config maximizing mean r = A + lam * S over folds.

    A is the clean detection rate at target_fpr on the validation fold; S is
    the mean detection rate on that fold attacked at budgets 1..budget (the
    attack defaults to perfect knowledge with feature addition and removal).
    Returns (best_config, rows) where rows hold per-(config, fold) scores.
    """
    from . import evaluation
    from .attacks import AttackSpec, ADDITION_AND_REMOVAL, PERFECT

    if not grid:
        raise ValueError("empty config grid")
    if folds < 2:
        raise ValueError("folds must be >= 2")
    if budget < 1:
        raise ValueError("attack budget must be >= 1")
    if attack_spec is None:
        attack_spec = AttackSpec(PERFECT, ADDITION_AND_REMOVAL, budget)
    _require_both_classes(data)
    fold_rows = _fold_rows(data.n, folds, seed)
    all_rows = np.arange(data.n)
    rows_out = []
    mean_r = []
    for ci, config in enumerate(grid):
        r_values = []
        for fi, val_rows in enumerate(fold_rows):
            train_rows = np.setdiff1d(all_rows, val_rows)
            train_part = data.subset(train_rows)
            val_part = data.subset(val_rows)
            _require_both_classes(train_part, what=f"fold {fi} training part")
            _require_both_classes(val_part, what=f"fold {fi} validation part")
            model, _ = train(train_part, config, iteration_hook=iteration_hook)
            curve = evaluation.security_curve(model, val_part, attack_spec, budget,
                                              target_fpr=target_fpr)
            A = float(curve.dr[0])
            S = evaluation.security_score(curve)
            r = evaluation.tradeoff_score(A, S, lam)
            rows_out.append({"config_id": ci, "fold": fi, "A": A, "S": S, "r": r})
            r_values.append(r)
        mean_r.append(float(np.mean(r_values)))
    best = int(np.argmax(mean_r))  # ties: first in grid order
    return grid[best], rows_out
