"""Compare the compiled and pure-Python GF(p) RREF kernels.

    python3 benchmarks/bench_rref.py --rows 600 --cols 500 --repeat 3

Both kernels run on copies of the same random matrix; pivots and the reduced
matrix must agree before any timing is reported.
"""

import argparse
import time

import numpy as np

from apolar.exactcore import _rref_py

try:
    from apolar.exactcore._rref import rref_modp as rref_compiled
except ImportError:
    rref_compiled = None


def low_rank(rows, cols, rank, p, rng):
    a = rng.integers(0, p, size=(rows, rank), dtype=np.int64)
    b = rng.integers(0, p, size=(rank, cols), dtype=np.int64)
    out = np.zeros((rows, cols), dtype=np.int64)
    for k in range(rank):  # accumulate mod p to stay inside int64
        out = (out + np.outer(a[:, k], b[k]) % p) % p
    return np.ascontiguousarray(out)


def best_of(fn, m, p, repeat):
    times, result = [], None
    for _ in range(repeat):
        work = m.copy()
        t0 = time.perf_counter()
        piv = fn(work, p)
        times.append(time.perf_counter() - t0)
        result = (piv, work)
    return min(times), result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=600)
    ap.add_argument("--cols", type=int, default=500)
    ap.add_argument("--rank", type=int, help="default: full rank")
    ap.add_argument("--prime", type=int, default=31991)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    rank = args.rank or min(args.rows, args.cols)
    m = low_rank(args.rows, args.cols, rank, args.prime, rng)

    t_py, (piv_py, red_py) = best_of(_rref_py.rref_modp, m, args.prime, args.repeat)
    print(f"matrix {args.rows}x{args.cols} over GF({args.prime}), rank {len(piv_py)}")
    print(f"python  {t_py * 1e3:9.1f} ms")
    if rref_compiled is None:
        print("cython  unavailable (extension not built)")
        return
    t_cy, (piv_cy, red_cy) = best_of(rref_compiled, m, args.prime, args.repeat)
    if list(piv_cy) != list(piv_py) or not np.array_equal(red_cy, red_py):
        raise SystemExit("backends disagree")
    print(f"cython  {t_cy * 1e3:9.1f} ms")
    print(f"speedup {t_py / t_cy:9.1f}x")


if __name__ == "__main__":
    main()
