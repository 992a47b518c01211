"""Time the compiled GF(2) kernels against the numpy fallback.

    python3 benchmarks/bench_gf2.py [--sizes 256 512 1024] [--repeat 3]
"""
import argparse
import time

import numpy as np

from equivhom import _gf2_fallback
from equivhom.gf2 import pack

try:
    from equivhom import _gf2_ext
except ImportError:
    _gf2_ext = None


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench(n, repeat, rng):
    dense = rng.integers(0, 2, size=(n, n), dtype=np.uint8)
    w = pack(dense)
    other = pack(rng.integers(0, 2, size=(n, n), dtype=np.uint8))
    rows = []
    kernels = [("numpy", _gf2_fallback)] + ([("compiled", _gf2_ext)] if _gf2_ext else [])
    results = {}
    for name, k in kernels:
        t_rank, r = best_of(lambda: k.rank(w.copy(), n), repeat)
        t_rref, piv = best_of(lambda: k.rref(w.copy(), n), repeat)
        t_mul, prod = best_of(lambda: k.matmul(w, n, other), repeat)
        results[name] = (int(r), list(piv), prod)
        rows.append((name, n, t_rank, t_rref, t_mul))
    if len(results) == 2:
        a, b = results["numpy"], results["compiled"]
        assert a[0] == b[0] and a[1] == b[1] and np.array_equal(a[2], b[2]), "backends disagree"
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[256, 512, 1024, 2048])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"{'backend':<9} {'n':>5} {'rank s':>9} {'rref s':>9} {'matmul s':>9}")
    for n in args.sizes:
        rows = bench(n, args.repeat, rng)
        for name, size, a, b, c in rows:
            print(f"{name:<9} {size:>5} {a:>9.4f} {b:>9.4f} {c:>9.4f}")
        if len(rows) == 2:
            print(f"{'speedup':<9} {n:>5} {rows[0][2] / rows[1][2]:>8.1f}x {rows[0][3] / rows[1][3]:>8.1f}x "
                  f"{rows[0][4] / rows[1][4]:>8.1f}x")
    if _gf2_ext is None:
        print("compiled extension not built; only the numpy fallback was timed")


if __name__ == "__main__":
    main()
