"""Compiled vs numpy kernels for the Monte-Carlo integrand.

    python benchmarks/bench_kernels.py [--points N] [--repeat R] [--json]

Times ``mc_accumulate`` (one chunk of domain samples) and ``poly2_eval`` on
identical inputs for both backends and checks that the results agree.
"""
import argparse
import json
import time

import numpy as np

from conebessel import _pykernels
from conebessel.bessel import one_F1_poly2
from conebessel.jordan import coords_det, get_algebra, trace_vector

try:
    from conebessel import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def cases(points, rng):
    for name, lam, k in (("r", 2.5, 1), ("symr2", 4.0, 1), ("spin3", 4.0, 2), ("hermc2", 5.0, 0)):
        alg = get_algebra(name)
        W = rng.uniform(-0.7, 0.7, size=(points, 2 * alg.n))
        a = 0.3 * (rng.standard_normal(alg.n) + 1j * rng.standard_normal(alg.n))
        delta_a = complex(coords_det(alg, a[None])[0]) if alg.r == 2 else 0j
        F = one_F1_poly2(alg, lam, k, alg.r)
        p = complex(lam + k - 2 * alg.n / alg.r)
        yield (f"mc_accumulate/{name}",
               (W, a, delta_a, -2 * a, trace_vector(alg).astype(float), alg.r, p, F), "mc_accumulate")
    F = one_F1_poly2(get_algebra("symr2"), 4.0, 3, 2)
    e1 = rng.standard_normal(points) + 1j * rng.standard_normal(points)
    e2 = rng.standard_normal(points) + 1j * rng.standard_normal(points)
    yield "poly2_eval/symr2,k=3", (F, e1, e2), "poly2_eval"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=2 ** 16)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    rows = []
    for label, inputs, fname in cases(args.points, rng):
        t_py, ref = best_of(lambda: getattr(_pykernels, fname)(*inputs), args.repeat)
        row = {"kernel": label, "points": args.points, "python_s": t_py}
        if _ckernels is not None:
            t_c, got = best_of(lambda: getattr(_ckernels, fname)(*inputs), args.repeat)
            row.update(cython_s=t_c, speedup=t_py / t_c,
                       max_rel_diff=float(np.max(np.abs(np.asarray(got) - np.asarray(ref)))
                                          / max(np.max(np.abs(ref)), 1e-300)))
        rows.append(row)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'kernel':24s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s} {'rel diff':>9s}")
    for row in rows:
        if "cython_s" in row:
            print(f"{row['kernel']:24s} {1e3 * row['python_s']:10.2f} {1e3 * row['cython_s']:10.2f} "
                  f"{row['speedup']:8.1f} {row['max_rel_diff']:9.1e}")
        else:
            print(f"{row['kernel']:24s} {1e3 * row['python_s']:10.2f} {'n/a':>10s}")


if __name__ == "__main__":
    main()
