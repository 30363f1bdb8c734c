"""Numba vs numpy kernel timings.

    python3 benchmarks/bench_kernels.py [--repeat N] [--rows R] [--end-to-end]

Kernel timings call both backends directly in one process, after one warm-up
call so numba compilation is excluded.  ``--end-to-end`` also times a Hilbert
series in two subprocesses, one with ``EXTREMEREG_DISABLE_NUMBA=1``.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from extremereg import kernels

P = 32003

E2E = """
import time
from extremereg.kernels import HAVE_NUMBA
from extremereg.polyring import GF, Ideal, PolynomialRing
from extremereg.invariants import hilbert_series
R = PolynomialRing("a b c d e f", GF())
gens = [R(f"{x}^{k}*{y}^{8 - k}") for x, y in ["ab", "bc", "cd", "de", "ef", "fa"] for k in range(1, 8)]
I = Ideal(R, gens)
hilbert_series(I)
t = time.perf_counter()
for _ in range(REPEAT):
    hilbert_series(I)
print(HAVE_NUMBA, (time.perf_counter() - t) / REPEAT)
"""


def cases(rows, seed=0):
    rng = np.random.default_rng(seed)
    E = rng.integers(0, 6, size=(rows, 8)).astype(np.int64)
    v = rng.integers(0, 3, size=8).astype(np.int64)
    A = rng.integers(0, P, size=(min(rows, 200), min(rows, 200))).astype(np.int64)
    return {
        "minimal_rows": ((E,), kernels._minimal_rows_numba, kernels._minimal_rows_numpy),
        "colon_rows": ((E, v), kernels._colon_rows_numba, kernels._colon_rows_numpy),
        "divisible_rows": ((E, v), kernels._divisible_rows_numba, kernels._divisible_rows_numpy),
        "rank_mod_p": ((A, P), kernels._rank_mod_p_numba, kernels._rank_mod_p_numpy),
    }


def bench(fn, args, repeat):
    fresh = lambda: fn(*[a.copy() if isinstance(a, np.ndarray) else a for a in args])
    fresh()  # warm-up / compile
    return min(timeit.repeat(fresh, number=1, repeat=repeat))


def end_to_end(repeat):
    out = {}
    for flag in ("0", "1"):
        env = dict(os.environ, EXTREMEREG_DISABLE_NUMBA=flag)
        res = subprocess.run(
            [sys.executable, "-c", E2E.replace("REPEAT", str(repeat))],
            env=env, capture_output=True, text=True, check=True,
        )
        have, secs = res.stdout.split()
        out["numba" if have == "True" else "numpy"] = float(secs)
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--rows", type=int, default=400)
    ap.add_argument("--end-to-end", action="store_true")
    args = ap.parse_args(argv)
    if not kernels.HAVE_NUMBA:
        print("numba unavailable (or disabled); both columns time the numpy code")
    print(f"{'kernel':<16}{'numba s':>12}{'numpy s':>12}{'speedup':>10}")
    for name, (a, fast, slow) in cases(args.rows).items():
        tf, ts = bench(fast, a, args.repeat), bench(slow, a, args.repeat)
        print(f"{name:<16}{tf:>12.6f}{ts:>12.6f}{ts / tf:>10.1f}")
    if args.end_to_end:
        r = end_to_end(args.repeat)
        print(f"{'hilbert_series':<16}{r['numba']:>12.6f}{r['numpy']:>12.6f}{r['numpy'] / r['numba']:>10.1f}")


if __name__ == "__main__":
    main()
