#!/usr/bin/env python3
"""Benchmark the pure-Python integer kernels against the compiled twins.

Workloads mirror the attack's hot calls: Hermite normal forms of
construction bases and hull coefficient stacks, and LLL reduction of
scaled near-orthogonal frames.  Every case first checks that both
backends return identical output, then reports best-of-N timings.  The
end-to-end rows run the full attack in a child interpreter per backend,
since the backend is fixed at import time.

Usage: python3 benchmarks/bench_kernels.py [--repeats N] [--seed S] [--skip-e2e]
"""

import argparse
import json
import os
import random
import subprocess
import sys
import tempfile
import time

from hullattack import _core_py

try:
    from hullattack import _core_cy
except ImportError:
    _core_cy = None


def construction_rows(rng, n, m, k):
    """Generator rows of a free code stacked with k times the identity."""
    rows = [[1 if j == i else rng.randrange(k) for j in range(n)] for i in range(m)]
    rows += [[k if i == j else 0 for j in range(n)] for i in range(n)]
    return rows


def hull_stack(rng, n, modulus):
    """Kernel lift over Z_modulus stacked with modulus times the identity."""
    rows = [[rng.randrange(modulus) for _ in range(n)] for _ in range(n)]
    rows += [[modulus if i == j else 0 for j in range(n)] for i in range(n)]
    return rows


def dense_rows(rng, nrows, ncols, bound):
    return [[rng.randrange(-bound, bound + 1) for _ in range(ncols)] for _ in range(nrows)]


def scaled_frame(rng, n, scale, noise):
    """Near-orthogonal basis like a cleared hull basis entering LLL."""
    rows = [[scale if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            rows[i][j] += rng.randrange(-noise, noise + 1)
    return rows


def full_rank_dense(rng, n, bound):
    while True:
        rows = dense_rows(rng, n, n, bound)
        try:
            _core_py.lll_rows(rows, 3, 4)
        except ValueError:
            continue
        return rows


def best_time(fn, args, repeats):
    best = None
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(*args)
        dt = time.perf_counter() - t0
        if best is None or dt < best:
            best = dt
    return best, out


def time_row(name, fn_pure, fn_comp, args, repeats):
    t_pure, out_pure = best_time(fn_pure, args, repeats)
    if fn_comp is None:
        print(f"{name:<44} {t_pure:>10.4f}s {'-':>11} {'-':>8}")
        return
    t_comp, out_comp = best_time(fn_comp, args, repeats)
    if out_pure != out_comp:
        raise SystemExit(f"backend outputs differ on workload: {name}")
    speedup = t_pure / t_comp if t_comp > 0 else float("inf")
    print(f"{name:<44} {t_pure:>10.4f}s {t_comp:>10.4f}s {speedup:>7.2f}x")


E2E_CHILD = """
import json, sys, time
from hullattack.attack import hull_attack
from hullattack.instances import Instance

with open(sys.argv[1]) as fh:
    inst = Instance.from_dict(json.load(fh))
t0 = time.perf_counter()
result = hull_attack(inst.l1, inst.l2)
print(time.perf_counter() - t0)
"""


def time_attack(instance_path, pure, repeats):
    env = os.environ.copy()
    env.pop("HULLATTACK_PURE", None)
    if pure:
        env["HULLATTACK_PURE"] = "1"
    best = None
    for _ in range(repeats):
        proc = subprocess.run(
            [sys.executable, "-c", E2E_CHILD, instance_path],
            capture_output=True,
            text=True,
            env=env,
        )
        if proc.returncode != 0:
            raise SystemExit(f"attack child failed:\n{proc.stderr}")
        dt = float(proc.stdout.strip())
        if best is None or dt < best:
            best = dt
    return best


def e2e_row(name, instance_path, repeats):
    t_pure = time_attack(instance_path, pure=True, repeats=repeats)
    if _core_cy is None:
        print(f"{name:<44} {t_pure:>10.4f}s {'-':>11} {'-':>8}")
        return
    t_comp = time_attack(instance_path, pure=False, repeats=repeats)
    speedup = t_pure / t_comp if t_comp > 0 else float("inf")
    print(f"{name:<44} {t_pure:>10.4f}s {t_comp:>10.4f}s {speedup:>7.2f}x")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5, help="best-of-N timing (default 5)")
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--skip-e2e", action="store_true", help="skip the full-attack rows")
    args = parser.parse_args(argv)

    rng = random.Random(args.seed)
    if _core_cy is None:
        print("compiled kernels not built; timing the pure backend only\n")
    print(f"kernel benchmark (best of {args.repeats}, seed {args.seed})")
    print(f"{'workload':<44} {'pure':>11} {'compiled':>11} {'speedup':>8}")

    hnf_p, hnf_c = _core_py.hnf_rows, None if _core_cy is None else _core_cy.hnf_rows
    lll_p, lll_c = _core_py.lll_rows, None if _core_cy is None else _core_cy.lll_rows

    rows = construction_rows(rng, 12, 6, 15)
    time_row("hnf construction basis n=12 m=6 k=15", hnf_p, hnf_c, (rows, 12), args.repeats)

    rows = hull_stack(rng, 12, 15 * 5**24)
    time_row("hnf hull stack n=12, modulus ~1e18", hnf_p, hnf_c, (rows, 12), args.repeats)

    rows = dense_rows(rng, 32, 16, 10**3)
    time_row("hnf dense stack 32x16, entries ~1e3", hnf_p, hnf_c, (rows, 16), args.repeats)

    rows = scaled_frame(rng, 12, 10**17, 10**13)
    time_row("lll scaled frame n=12, scale ~1e17", lll_p, lll_c, (rows, 99, 100), args.repeats)

    rows = full_rank_dense(rng, 16, 999)
    time_row("lll dense basis n=16, entries ~1e3", lll_p, lll_c, (rows, 99, 100), args.repeats)

    if not args.skip_e2e:
        from hullattack.instances import generate_instance

        e2e_repeats = min(args.repeats, 3)
        with tempfile.TemporaryDirectory() as tmp:
            for k, n, m in ((5, 8, 4), (15, 12, 6)):
                inst = generate_instance(k=k, n=n, m=m, seed=args.seed)
                path = os.path.join(tmp, f"inst_{k}_{n}.json")
                with open(path, "w") as fh:
                    json.dump(inst.to_dict(), fh)
                e2e_row(f"end-to-end attack k={k} n={n}", path, e2e_repeats)

    print("\nall compared outputs identical")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
