"""Compare the compiled and pure-numpy elimination kernels.

    python benchmarks/bench_rref.py [--sizes 8 16 32 64] [--p 2 3 97] [--repeat 5]

Both kernels reduce the same random matrices; the script checks that the
results agree before reporting the median time per call.
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from natfull import _kernels_py

try:
    from natfull import _kernels as _compiled
except ImportError:  # pragma: no cover - depends on the build
    _compiled = None


def time_kernel(kernel, m: np.ndarray, p: int, repeat: int):
    times, result = [], None
    for _ in range(repeat):
        work = m.copy()
        t0 = time.perf_counter()
        piv = kernel.rref_inplace(work, p)
        times.append(time.perf_counter() - t0)
        result = (work, list(piv))
    return statistics.median(times), result


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 64, 128])
    ap.add_argument("--p", type=int, nargs="+", default=[2, 3, 97])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _compiled is None:
        print("compiled kernel not built; only the numpy fallback is available")
    rng = np.random.default_rng(args.seed)
    print(f"{'p':>3} {'n':>5} {'numpy (ms)':>11} {'compiled (ms)':>14} {'speedup':>8}")
    for p in args.p:
        for n in args.sizes:
            m = np.ascontiguousarray(rng.integers(0, p, size=(n, n + n // 2)), dtype=np.int64)
            t_py, r_py = time_kernel(_kernels_py, m, p, args.repeat)
            if _compiled is None:
                print(f"{p:>3} {n:>5} {t_py * 1e3:>11.3f} {'-':>14} {'-':>8}")
                continue
            t_c, r_c = time_kernel(_compiled, m, p, args.repeat)
            if not (np.array_equal(r_py[0], r_c[0]) and r_py[1] == r_c[1]):
                raise SystemExit(f"kernels disagree at p={p}, n={n}")
            print(f"{p:>3} {n:>5} {t_py * 1e3:>11.3f} {t_c * 1e3:>14.3f} {t_py / t_c:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
