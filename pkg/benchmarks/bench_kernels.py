"""Compiled kernels against the numpy fallback.

Times the CSR Laplacian product, a full momentum ascent and the exhaustive
oracle on both backends, checks that each pair of outputs agrees bit for bit,
and prints one line per kernel::

    python3 benchmarks/bench_kernels.py [--repeat 3] [--quick]
"""

import argparse
import time

import numpy as np

from quadcut import _backend
from quadcut.graph import generate_er


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller problem sizes")
    args = ap.parse_args(argv)
    if _backend.compiled is None:
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
    backends = {"compiled": _backend.compiled, "python": _backend.pure}
    n, p, cols, iters, brute_n = (1000, 0.05, 16, 200, 18) if args.quick else (3000, 0.02, 32, 500, 22)
    g = generate_er(n, p, 0)
    start = np.random.default_rng(0).uniform(-1e-4, 1e-4, (cols, n))
    small = generate_er(brute_n, 0.4, 1)
    print(f"graph n={g.n} m={g.m}; {cols} columns; oracle n={small.n}")

    cases = {
        "laplacian x100": lambda k: _laplacian(k, g, start, 100),
        f"ascent T={iters}": lambda k: _ascent(k, g, start, iters),
        "gray oracle": lambda k: k.gray_maxcut(small.indptr, small.indices, small.n, 0, 1),
    }
    for name, fn in cases.items():
        res = {b: best_of(lambda: fn(k), args.repeat) for b, k in backends.items()}
        same = _equal(res["compiled"][1], res["python"][1])
        tc, tp = res["compiled"][0], res["python"][0]
        print(f"{name:16s} compiled {tc * 1e3:9.2f} ms  python {tp * 1e3:9.2f} ms  "
              f"speedup {tp / tc:6.1f}x  identical={same}")


def _laplacian(k, g, start, reps):
    out = np.empty_like(start)
    for _ in range(reps):
        k.laplacian_columns(g.indptr, g.indices, g.degree_vector, start, out, 1)
    return out


def _ascent(k, g, start, iters):
    c = start.copy()
    v = np.zeros_like(c)
    used, _ = k.ascend_columns(g.indptr, g.indices, g.degree_vector, c, v, 0.01, 0.9, iters, True, 1)
    return c, v, np.asarray(used)


def _equal(a, b):
    if isinstance(a, tuple):
        return all(_equal(x, y) for x, y in zip(a, b))
    return bool(np.array_equal(np.asarray(a), np.asarray(b)))


if __name__ == "__main__":
    main()
