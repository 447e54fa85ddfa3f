"""Time the numba kernels against the pure-numpy fallback.

Runs each hot kernel on a synthetic sparse problem, then a short end-to-end
training run under each backend. JIT compilation happens during the warmup
call, so the reported medians measure steady-state throughput.

    python3 benchmarks/bench_backends.py --n 20000 --d 500 --repeats 7
"""
import argparse
import time

import numpy as np

from secsvm import backends, synth, training


def median_seconds(fn, repeats):
    fn()  # warmup; compiles the numba path on first use
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return float(np.median(times))


def build_problem(n, d, density, seed):
    rng = np.random.Generator(np.random.PCG64(seed))
    counts = rng.binomial(d, density, size=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    indices = np.concatenate([
        np.sort(rng.choice(d, size=c, replace=False)) for c in counts
    ]).astype(np.int64) if counts.sum() else np.zeros(0, dtype=np.int64)
    y = np.where(rng.random(n) < 0.5, 1.0, -1.0)
    w = rng.normal(0.0, 0.3, d)
    return indices, indptr, y, w, 0.1


def kernel_cases(n, d, density, seed):
    indices, indptr, y, w, b = build_problem(n, d, density, seed)
    rng = np.random.Generator(np.random.PCG64(seed + 1))
    attack_mask = rng.random(n) < 0.5
    order = np.argsort(-np.abs(w)).astype(np.int64)
    can_add = np.ones(d, dtype=bool)
    can_remove = rng.random(d) < 0.5
    return {
        "decision_scores": lambda impl: impl.decision_scores(indices, indptr, w, b),
        "hinge_objective": lambda impl: impl.hinge_objective(indices, indptr, y, w, b, 1.0),
        "hinge_subgradient": lambda impl: impl.hinge_subgradient(indices, indptr, y, w, b, 1.0),
        "evade_rows": lambda impl: impl.evade_rows(
            indices, indptr, attack_mask, order, can_add, can_remove, 25),
    }


def bench_kernels(args):
    cases = kernel_cases(args.n, args.d, args.density, args.seed)
    names = backends.available_backends()
    print(f"kernels on n={args.n} d={args.d} density={args.density} "
          f"(median of {args.repeats})")
    header = f"{'kernel':<20}" + "".join(f"{name:>12}" for name in names)
    if len(names) > 1:
        header += f"{'speedup':>10}"
    print(header)
    for kernel, call in cases.items():
        row = f"{kernel:<20}"
        timed = {}
        for name in names:
            impl = backends.get_impl(name)
            timed[name] = median_seconds(lambda: call(impl), args.repeats)
            row += f"{timed[name] * 1e3:>10.2f}ms"
        if "numba" in timed and "numpy" in timed:
            row += f"{timed['numpy'] / timed['numba']:>9.1f}x"
        print(row)


def bench_training(args):
    data, _ = synth.generate(args.n_train // 2, args.n_train // 2, 200, 8,
                             0.03, args.seed)
    config = training.TrainConfig(
        bounds=training.BoundsSpec.uniform(-0.5, 0.5),
        epsilon=1e-6, max_iters=args.train_iters, line_search_full=False)
    original = backends.active_backend()
    print(f"\ntrain() on n={data.n} d=200, {args.train_iters} iterations "
          f"(median of {args.repeats})")
    try:
        for name in backends.available_backends():
            backends.set_backend(name)
            t = median_seconds(lambda: training.train(data, config),
                               args.repeats)
            print(f"{name:<20}{t:>10.2f}s")
    finally:
        backends.set_backend(original)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=20000, help="kernel bench rows")
    parser.add_argument("--d", type=int, default=500)
    parser.add_argument("--density", type=float, default=0.05)
    parser.add_argument("--n-train", type=int, default=2000)
    parser.add_argument("--train-iters", type=int, default=300)
    parser.add_argument("--repeats", type=int, default=7)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    print(f"active backend: {backends.active_backend()}; "
          f"available: {backends.available_backends()}")
    bench_kernels(args)
    bench_training(args)


if __name__ == "__main__":
    main()
