"""Command-line driver: synth / train / attack / eval / seccv.

Every command writes its artifacts under --out together with a run.json
provenance record (command, resolved arguments, library versions, backend).
No timestamps go into artifacts, so a rerun with the same inputs is
byte-identical. Exit codes: 0 success, 2 usage error, 3 data error,
4 numerical divergence.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__, backends, ensemble, evaluation, synth, training
from . import attacks as attacks_mod
from .errors import DatasetError, DivergenceError
from .features import (BENIGN, MALWARE, MANIFEST_TAGS, SET_TAGS,
                       parse_dataset, project_to_space, restrict_to_tags,
                       select_features, split, write_dataset)
from .model import (decision_scores, load_model, save_model, weight_profile)

CLASSIFIER_KINDS = ("svm", "secsvm", "secsvm_manifest_only", "mcs")
SURROGATE_SEED_OFFSET = 10_000


def _fmt(value):
    """Shortest-round-trip text for CSV/JSON cells."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([v if isinstance(v, str) else _fmt(v) for v in row])


def _write_json(path, doc):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def _write_run_record(out_dir, command, arguments):
    try:
        import numba
        numba_version = numba.__version__
    except ImportError:
        numba_version = None
    _write_json(out_dir / "run.json", {
        "command": command,
        "arguments": arguments,
        "backend": backends.active_backend(),
        "versions": {
            "secsvm": __version__,
            "numpy": np.__version__,
            "numba": numba_version,
        },
    })


def _out_dir(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _load_manifest(path):
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ValueError(f"unreadable manifest {path}: {e}") from e
    if not isinstance(doc, dict):
        raise ValueError(f"manifest {path} must hold a JSON object")
    return doc


def _resolve(args, manifest, key, default):
    """Flag beats manifest beats built-in default."""
    flag = getattr(args, key, None)
    if flag is not None:
        return flag
    return manifest.get(key, default)


def _parse_floats(text):
    return tuple(float(v) for v in str(text).split(",") if v != "")


def _bound_value(value):
    """Bounds in JSON/flags spell infinities as 'inf' / '-inf'."""
    if isinstance(value, str):
        return float(value)
    return float(value)


# ---------------------------------------------------------------- synth

def cmd_synth(args):
    out = _out_dir(args)
    data, _ = synth.generate(args.n_benign, args.n_malware, args.d,
                             args.redundancy, args.flip_noise, args.seed)
    write_dataset(data, out / "dataset.txt")
    _write_run_record(out, "synth", {
        "n_benign": args.n_benign, "n_malware": args.n_malware, "d": args.d,
        "redundancy": args.redundancy, "flip_noise": args.flip_noise,
        "seed": args.seed,
    })
    return 0


# ---------------------------------------------------------------- train

def _train_config_from(args, manifest, seed, bounds):
    decay = training.DecaySchedule(
        name=_resolve(args, manifest, "decay_name", "exponential"),
        a=float(_resolve(args, manifest, "decay_rate", 0.01)))
    gamma = _resolve(args, manifest, "gamma_grid", training.DEFAULT_GAMMA_GRID)
    if isinstance(gamma, str):
        gamma = _parse_floats(gamma)
    max_iters = _resolve(args, manifest, "max_iters", None)
    return training.TrainConfig(
        C=float(_resolve(args, manifest, "reg_c", 1.0)),
        bounds=bounds,
        batch_size=int(_resolve(args, manifest, "batch_size", 32)),
        eta0=float(_resolve(args, manifest, "eta0", 0.5)),
        gamma_grid=tuple(float(g) for g in gamma),
        decay=decay,
        epsilon=float(_resolve(args, manifest, "epsilon", 1e-4)),
        max_iters=None if max_iters is None else int(max_iters),
        seed=seed,
        line_search_full=bool(_resolve(args, manifest, "line_search_full", False)),
    )


def _resolve_bounds(args, manifest, kind):
    if kind in ("secsvm", "secsvm_manifest_only"):
        lb = _resolve(args, manifest, "bounds_lb", None)
        ub = _resolve(args, manifest, "bounds_ub", None)
        if lb is None or ub is None:
            raise ValueError(f"classifier {kind} requires --bounds-lb and --bounds-ub")
        return training.BoundsSpec.uniform(_bound_value(lb), _bound_value(ub))
    return training.BoundsSpec.unbounded()


def _fit_one(kind, train_data, config, args, manifest, rep_seed):
    """Train one classifier; returns (model, report_or_None, sidecar_or_None)."""
    if kind == "mcs":
        e_config = ensemble.EnsembleConfig(
            n_base=int(_resolve(args, manifest, "n_base", 50)),
            sample_frac=float(_resolve(args, manifest, "sample_frac", 0.8)),
            feature_frac=float(_resolve(args, manifest, "feature_frac", 0.5)),
            base_config=config,
            seed=rep_seed,
        )
        model, bases, feats = ensemble.train_mcs_detailed(train_data, e_config)
        sidecar = {
            "n_base": e_config.n_base,
            "sample_frac": e_config.sample_frac,
            "feature_frac": e_config.feature_frac,
            "seed": e_config.seed,
            "base_seeds": ensemble.base_seeds(e_config),
            "base_sgd_seed": config.seed,
            "base_feature_counts": [int(len(f)) for f in feats],
        }
        return model, None, sidecar
    model, report = training.train(train_data, config)
    return model, report, None


def cmd_train(args):
    manifest = _load_manifest(args.manifest)
    out = _out_dir(args)
    data_path = _resolve(args, manifest, "data", None)
    if data_path is None:
        raise ValueError("train requires --data (or a manifest data entry)")
    kind = _resolve(args, manifest, "classifier", None)
    if kind not in CLASSIFIER_KINDS:
        raise ValueError(f"classifier must be one of {CLASSIFIER_KINDS}, got {kind!r}")
    reps = int(_resolve(args, manifest, "repetitions", 1))
    if reps < 1:
        raise ValueError("repetitions must be >= 1")
    seed = int(_resolve(args, manifest, "seed", 0))
    fractions = _resolve(args, manifest, "split", (0.5, 0.2, 0.3))
    if isinstance(fractions, str):
        fractions = _parse_floats(fractions)
    d_prime = _resolve(args, manifest, "d_prime", None)
    train_surrogate = bool(_resolve(args, manifest, "train_surrogate", False))
    bounds = _resolve_bounds(args, manifest, kind)

    data = parse_dataset(data_path)
    for r in range(reps):
        rep_seed = seed + r
        rep_dir = out / f"rep{r:02d}"
        rep_dir.mkdir(parents=True, exist_ok=True)
        train_d, surr_d, test_d = split(data, tuple(fractions), rep_seed)
        if kind == "secsvm_manifest_only":
            _, train_d = restrict_to_tags(train_d, MANIFEST_TAGS)
        if d_prime is not None:
            _, train_d = select_features(train_d, int(d_prime))
        config = _train_config_from(args, manifest, rep_seed, bounds)
        model, report, sidecar = _fit_one(kind, train_d, config, args, manifest, rep_seed)
        save_model(model, rep_dir / "model.json")
        if report is not None:
            _write_json(rep_dir / "report.json", {
                "objective_trace": report.objective_trace,
                "iterations": report.iterations,
                "converged": report.converged,
            })
        if sidecar is not None:
            _write_json(rep_dir / "mcs_bases.json", sidecar)
        write_dataset(train_d, rep_dir / "train.txt")
        if surr_d.n:
            write_dataset(surr_d, rep_dir / "surrogate.txt")
        if test_d.n:
            write_dataset(test_d, rep_dir / "test.txt")
        if train_surrogate and surr_d.n:
            surr_p = project_to_space(surr_d, model.space)
            s_config = _train_config_from(args, manifest,
                                          rep_seed + SURROGATE_SEED_OFFSET, bounds)
            s_model, _, _ = _fit_one(kind, surr_p, s_config, args, manifest,
                                     rep_seed + SURROGATE_SEED_OFFSET)
            save_model(s_model, rep_dir / "surrogate_model.json")

    _write_run_record(out, "train", {
        "data": str(data_path), "classifier": kind, "repetitions": reps,
        "seed": seed, "split": list(fractions),
        "d_prime": None if d_prime is None else int(d_prime),
        "bounds_lb": None if kind in ("svm", "mcs") else float(bounds.lb),
        "bounds_ub": None if kind in ("svm", "mcs") else float(bounds.ub),
        "train_surrogate": train_surrogate,
    })
    return 0


# ---------------------------------------------------------------- attack

def cmd_attack(args):
    out = _out_dir(args)
    target = load_model(args.model)
    data = parse_dataset(args.data, space=target.space)
    spec = attacks_mod.AttackSpec(args.knowledge, args.policy, args.budget)
    surrogate = load_model(args.surrogate_model) if args.surrogate_model else None
    surrogate_data = (parse_dataset(args.surrogate_data, space=target.space)
                      if args.surrogate_data else None)
    weights = attacks_mod.derive_attacker_weights(spec, target, surrogate, surrogate_data)
    attacked, flips = attacks_mod.attack_dataset(data, weights, spec.policy, spec.budget)
    write_dataset(attacked, out / "attacked.txt")
    mal_flips = flips[data.labels == MALWARE]
    histogram = {str(k): int(c) for k, c in
                 zip(*np.unique(mal_flips, return_counts=True))}
    _write_json(out / "attack_manifest.json", {
        "knowledge": spec.knowledge,
        "policy": spec.policy,
        "budget": spec.budget,
        "weight_source": weights.source,
        "attacked_samples": int((data.labels == MALWARE).sum()),
        "flips_per_sample": histogram,
    })
    _write_run_record(out, "attack", {
        "model": str(args.model), "data": str(args.data),
        "knowledge": spec.knowledge, "policy": spec.policy, "budget": spec.budget,
        "surrogate_model": args.surrogate_model, "surrogate_data": args.surrogate_data,
    })
    return 0


# ---------------------------------------------------------------- eval

def _freq_profile_rows(data):
    rows = []
    for cls_name, label in (("benign", BENIGN), ("malware", MALWARE)):
        rows_cls = np.flatnonzero(data.labels == label)
        profile = (evaluation.frequency_profile(data.subset(rows_cls))
                   if len(rows_cls) else {tag: float("nan") for tag in SET_TAGS})
        for tag in SET_TAGS:
            value = profile[tag]
            rows.append((cls_name, tag, "n/a" if np.isnan(value) else value))
    return rows


def _eval_single(model, data, cells, max_budget, target_fpr, out_dir,
                 surrogate=None, surrogate_data=None):
    """Evaluate one model on one clean dataset; returns per-cell curves."""
    profile = weight_profile(model)
    _write_csv(out_dir / "weights_profile.csv", ("rank", "abs_weight"),
               list(enumerate(profile.sorted_abs)))
    _write_csv(out_dir / "freq_profile.csv", ("class", "set_tag", "fraction"),
               _freq_profile_rows(data))
    n_mal, n_ben = data.class_counts()
    if n_mal == 0 or n_ben == 0:
        print("eval: dataset has a single class; skipping ROC and security curves",
              file=sys.stderr)
        return None, None
    curve = evaluation.roc(model, data)
    _write_csv(out_dir / "roc.csv", ("fpr", "tpr", "threshold"),
               zip(curve.fpr, curve.tpr, curve.thresholds))
    cell_curves = {}
    for knowledge, policy in cells:
        spec = attacks_mod.AttackSpec(knowledge, policy, max_budget)
        if knowledge == attacks_mod.LIMITED and surrogate is None:
            raise DatasetError("limited-knowledge cell needs a surrogate model")
        if knowledge == attacks_mod.MIMICRY and surrogate_data is None:
            raise DatasetError("mimicry cell needs surrogate data")
        sec = evaluation.security_curve(model, data, spec, max_budget,
                                        target_fpr=target_fpr,
                                        surrogate=surrogate,
                                        surrogate_data=surrogate_data)
        cell_dir = out_dir / "attacks" / f"{knowledge}_{policy}"
        cell_dir.mkdir(parents=True, exist_ok=True)
        _write_csv(cell_dir / "security_curve.csv", ("budget", "dr"),
                   zip(sec.budgets, sec.dr))
        cell_curves[(knowledge, policy)] = sec
    return curve, cell_curves


def _step_lookup(curve, grid):
    """(tpr, threshold) of the last ROC point with fpr <= each grid value."""
    idx = np.clip(np.searchsorted(curve.fpr, grid, side="right") - 1, 0, None)
    return curve.tpr[idx], curve.thresholds[idx]


def cmd_eval(args):
    out = _out_dir(args)
    cells = [(k, p)
             for k in str(args.knowledge).split(",")
             for p in str(args.policy).split(",")]
    model_path = Path(args.model)
    record = {
        "model": str(args.model), "data": args.data,
        "knowledge": args.knowledge, "policy": args.policy,
        "max_budget": args.max_budget, "target_fpr": args.target_fpr,
        "surrogate_model": args.surrogate_model, "surrogate_data": args.surrogate_data,
    }
    if model_path.is_file():
        if args.data is None:
            raise ValueError("eval with a model file requires --data")
        model = load_model(model_path)
        data = parse_dataset(args.data, space=model.space)
        surrogate = load_model(args.surrogate_model) if args.surrogate_model else None
        surrogate_data = (parse_dataset(args.surrogate_data, space=model.space)
                          if args.surrogate_data else None)
        _eval_single(model, data, cells, args.max_budget, args.target_fpr, out,
                     surrogate, surrogate_data)
        _write_run_record(out, "eval", record)
        return 0

    # directory of repetitions
    rep_dirs = sorted(p for p in model_path.iterdir()
                      if p.is_dir() and (p / "model.json").is_file())
    if not rep_dirs:
        raise DatasetError(f"{model_path}: no rep*/model.json found")
    roc_curves = []
    cell_series = {cell: [] for cell in cells}
    weight_rows = []
    freq_values = {}
    tokens = None
    for rep in rep_dirs:
        model = load_model(rep / "model.json")
        if tokens is None:
            tokens = model.space.tokens()
        elif tokens != model.space.tokens():
            raise DatasetError("repetition models use mismatched feature spaces")
        test_path = rep / "test.txt"
        if not test_path.is_file():
            raise DatasetError(f"{rep}: missing test.txt")
        data = parse_dataset(test_path, space=model.space)
        surrogate = (load_model(rep / "surrogate_model.json")
                     if (rep / "surrogate_model.json").is_file() else None)
        surrogate_data = (parse_dataset(rep / "surrogate.txt", space=model.space)
                          if (rep / "surrogate.txt").is_file() else None)
        rep_out = out / rep.name
        rep_out.mkdir(parents=True, exist_ok=True)
        curve, cell_curves = _eval_single(model, data, cells, args.max_budget,
                                          args.target_fpr, rep_out,
                                          surrogate, surrogate_data)
        if curve is None:
            raise DatasetError(f"{rep}: test set has a single class")
        roc_curves.append(curve)
        for cell, sec in cell_curves.items():
            cell_series[cell].append(sec.dr)
        weight_rows.append(weight_profile(model).sorted_abs)
        for (cls, tag, value) in _freq_profile_rows(data):
            freq_values.setdefault((cls, tag), []).append(value)

    # aggregates
    if len(rep_dirs) == 1:
        single = roc_curves[0]
        _write_csv(out / "roc.csv", ("fpr", "tpr", "threshold"),
                   zip(single.fpr, single.tpr, single.thresholds))
    else:
        grid = np.linspace(0.0, 1.0, 201)
        tprs, thrs = zip(*(_step_lookup(c, grid) for c in roc_curves))
        _write_csv(out / "roc.csv", ("fpr", "tpr", "threshold"),
                   zip(grid, np.mean(tprs, axis=0), np.mean(thrs, axis=0)))
    for cell, series in cell_series.items():
        cell_dir = out / "attacks" / f"{cell[0]}_{cell[1]}"
        cell_dir.mkdir(parents=True, exist_ok=True)
        _write_csv(cell_dir / "security_curve.csv", ("budget", "dr"),
                   zip(np.arange(args.max_budget + 1), np.mean(series, axis=0)))
    _write_csv(out / "weights_profile.csv", ("rank", "abs_weight"),
               list(enumerate(np.mean(weight_rows, axis=0))))
    freq_rows = []
    for cls in ("benign", "malware"):
        for tag in SET_TAGS:
            vals = [v for v in freq_values.get((cls, tag), []) if not isinstance(v, str)]
            freq_rows.append((cls, tag, float(np.mean(vals)) if vals else "n/a"))
    _write_csv(out / "freq_profile.csv", ("class", "set_tag", "fraction"), freq_rows)
    _write_run_record(out, "eval", record)
    return 0


# ---------------------------------------------------------------- seccv

def cmd_seccv(args):
    manifest = _load_manifest(args.manifest)
    out = _out_dir(args)
    data_path = _resolve(args, manifest, "data", None)
    if data_path is None:
        raise ValueError("seccv requires --data (or a manifest data entry)")
    folds = int(_resolve(args, manifest, "folds", 5))
    budget = int(_resolve(args, manifest, "budget", 10))
    lam = float(_resolve(args, manifest, "lam", 0.01))
    target_fpr = float(_resolve(args, manifest, "target_fpr", 0.01))
    seed = int(_resolve(args, manifest, "seed", 0))
    ub_grid = _resolve(args, manifest, "ub_grid", (0.1, 0.5, 1.0))
    lb_grid = _resolve(args, manifest, "lb_grid", (-1.0, -0.5, -0.1))
    if isinstance(ub_grid, str):
        ub_grid = _parse_floats(ub_grid)
    if isinstance(lb_grid, str):
        lb_grid = _parse_floats(lb_grid)

    data = parse_dataset(data_path)
    grid = []
    grid_bounds = []
    for ub in ub_grid:
        for lb in lb_grid:
            bounds = training.BoundsSpec.uniform(_bound_value(lb), _bound_value(ub))
            grid.append(_train_config_from(args, manifest, seed, bounds))
            grid_bounds.append((float(lb), float(ub)))
    best, rows = training.secure_cross_validate(
        data, grid, folds, budget, lam, target_fpr=target_fpr, seed=seed)
    best_id = next(i for i, c in enumerate(grid) if c is best)
    _write_csv(out / "score_table.csv", ("config_id", "fold", "A", "S", "r"),
               [(r["config_id"], r["fold"], r["A"], r["S"], r["r"]) for r in rows])
    per_config = {}
    for r in rows:
        per_config.setdefault(r["config_id"], []).append(r)
    best_rows = per_config[best_id]
    _write_json(out / "best_config.json", {
        "config_id": best_id,
        "bounds_lb": grid_bounds[best_id][0],
        "bounds_ub": grid_bounds[best_id][1],
        "mean_A": float(np.mean([r["A"] for r in best_rows])),
        "mean_S": float(np.mean([r["S"] for r in best_rows])),
        "mean_r": float(np.mean([r["r"] for r in best_rows])),
    })
    _write_run_record(out, "seccv", {
        "data": str(data_path), "folds": folds, "budget": budget, "lam": lam,
        "target_fpr": target_fpr, "seed": seed,
        "ub_grid": list(ub_grid), "lb_grid": list(lb_grid),
    })
    return 0


# ---------------------------------------------------------------- parser

def build_parser():
    parser = argparse.ArgumentParser(
        prog="secsvm",
        description="Adversary-aware linear classification on sparse binary features")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a synthetic benchmark dataset")
    p.add_argument("--n-benign", type=int, required=True)
    p.add_argument("--n-malware", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--redundancy", type=int, default=1)
    p.add_argument("--flip-noise", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("train", help="split, select features, and fit classifiers")
    p.add_argument("--data")
    p.add_argument("--classifier", choices=CLASSIFIER_KINDS)
    p.add_argument("--repetitions", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--split", help="train,surrogate,test fractions, e.g. 0.5,0.2,0.3")
    p.add_argument("--d-prime", type=int)
    p.add_argument("--bounds-lb", type=float)
    p.add_argument("--bounds-ub", type=float)
    p.add_argument("--reg-c", type=float)
    p.add_argument("--batch-size", type=int)
    p.add_argument("--eta0", type=float)
    p.add_argument("--gamma-grid")
    p.add_argument("--decay-name", choices=("exponential", "linear"))
    p.add_argument("--decay-rate", type=float)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--max-iters", type=int)
    p.add_argument("--line-search-full", action=argparse.BooleanOptionalAction)
    p.add_argument("--n-base", type=int)
    p.add_argument("--sample-frac", type=float)
    p.add_argument("--feature-frac", type=float)
    p.add_argument("--train-surrogate", action=argparse.BooleanOptionalAction)
    p.add_argument("--manifest")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("attack", help="apply an evasion attack to a dataset")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--knowledge", choices=attacks_mod.KNOWLEDGE_LEVELS, required=True)
    p.add_argument("--policy", choices=attacks_mod.POLICIES,
                   default=attacks_mod.ADDITION_AND_REMOVAL)
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--surrogate-model")
    p.add_argument("--surrogate-data")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("eval", help="ROC, security curves, and profiles")
    p.add_argument("--model", required=True, help="model file or directory of rep*/")
    p.add_argument("--data", help="clean dataset (model-file mode)")
    p.add_argument("--knowledge", default=attacks_mod.PERFECT,
                   help="comma-separated knowledge levels")
    p.add_argument("--policy", default=attacks_mod.ADDITION_AND_REMOVAL,
                   help="comma-separated manipulation policies")
    p.add_argument("--max-budget", type=int, default=10)
    p.add_argument("--target-fpr", type=float, default=0.01)
    p.add_argument("--surrogate-model")
    p.add_argument("--surrogate-data")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("seccv", help="cross-validate box bounds on r = A + lambda*S")
    p.add_argument("--data")
    p.add_argument("--folds", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--lam", type=float)
    p.add_argument("--target-fpr", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--ub-grid", help="comma-separated upper bounds")
    p.add_argument("--lb-grid", help="comma-separated lower bounds")
    p.add_argument("--reg-c", type=float)
    p.add_argument("--batch-size", type=int)
    p.add_argument("--eta0", type=float)
    p.add_argument("--gamma-grid")
    p.add_argument("--decay-name", choices=("exponential", "linear"))
    p.add_argument("--decay-rate", type=float)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--max-iters", type=int)
    p.add_argument("--line-search-full", action=argparse.BooleanOptionalAction)
    p.add_argument("--manifest")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_seccv)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except DivergenceError as e:
        print(f"secsvm: training diverged: {e}", file=sys.stderr)
        return 4
    except DatasetError as e:
        print(f"secsvm: data error: {e}", file=sys.stderr)
        return 3
    except OSError as e:
        print(f"secsvm: data error: {e}", file=sys.stderr)
        return 3
    except ValueError as e:
        print(f"secsvm: usage error: {e}", file=sys.stderr)
        return 2


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
