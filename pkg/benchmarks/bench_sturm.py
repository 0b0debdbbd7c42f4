"""Compare the compiled and pure-Python Sturm bisection kernels.

Usage::

    python3 benchmarks/bench_sturm.py [--repeat 3] [--count 4]

Both kernels run the same algorithm on the same operator; the script also
checks that they return bit-identical eigenvalues.
"""

import argparse
import time

import numpy as np

from dirac_ac import _sturm_py, oracle
from dirac_ac.oracle import BISECT_MAX_ITER, BISECT_RTOL, RadialGrid, discretize_radial

try:
    from dirac_ac import _sturm as _compiled
except ImportError:  # extension not built
    _compiled = None


def _inputs(points, count):
    op = discretize_radial(0.75, 1.0, RadialGrid.default(1.0, points))
    d = np.ascontiguousarray(op.diagonal)
    e2 = np.ascontiguousarray(op.off_diagonal) ** 2
    lower, upper = oracle._gershgorin(d, op.off_diagonal)
    pivmin = np.finfo(float).tiny * float(e2.max())
    return d, e2, count, lower, upper, pivmin, BISECT_RTOL, BISECT_MAX_ITER


def _best(fn, args, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--count", type=int, default=4)
    ap.add_argument("--sizes", type=int, nargs="+", default=[512, 2048, 4097])
    args = ap.parse_args()

    print(f"{'points':>7} {'python [ms]':>12} {'cython [ms]':>12} {'speedup':>8}  identical")
    for n in args.sizes:
        inputs = _inputs(n, args.count)
        t_py, (v_py, _) = _best(_sturm_py.bisect_lowest, inputs, args.repeat)
        if _compiled is None:
            print(f"{n:7d} {1e3 * t_py:12.2f} {'n/a':>12} {'n/a':>8}  n/a")
            continue
        t_cy, (v_cy, _) = _best(_compiled.bisect_lowest, inputs, args.repeat)
        same = np.array_equal(np.asarray(v_py), np.asarray(v_cy))
        print(f"{n:7d} {1e3 * t_py:12.2f} {1e3 * t_cy:12.3f} {t_py / t_cy:8.0f}x  {same}")


if __name__ == "__main__":
    main()
