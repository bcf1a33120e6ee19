"""Compare the compiled coefficient kernels with the pure-Python fallback.

Two levels: the raw kernels on random coefficient lists, and an end-to-end
suite run in a subprocess with REESLIKE_PURE_PYTHON toggled.

    python3 benchmarks/bench_kernels.py [--quick]
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit

from reeslike import _kernels_py

try:
    from reeslike import _ckernels
except ImportError:
    _ckernels = None

SUITE_JOB = ["check", "--suite", "k1", "--ctx", "rees{ring=Zn:12,a=ideal[6]}", "--seed", "1", "--trials", "30"]


def kernel_rows(sizes, modulus, repeat):
    rng = random.Random(0)
    for d in sizes:
        a = [rng.randrange(modulus) for _ in range(d)]
        b = [rng.randrange(modulus) for _ in range(d)]
        row = [f"mul_mod deg={d:<4d} n={modulus}"]
        for impl in (_kernels_py, _ckernels):
            if impl is None:
                row.append("n/a")
                continue
            t = min(timeit.repeat(lambda: impl.mul_mod(a, b, modulus), number=repeat, repeat=3)) / repeat
            row.append(f"{t * 1e6:10.1f} us")
        yield row


def suite_time(pure: bool) -> float:
    env = dict(os.environ, REESLIKE_PURE_PYTHON="1" if pure else "0")
    code = ("import time, sys; from reeslike.cli import main; t = time.perf_counter(); "
            f"main({SUITE_JOB!r}); sys.stderr.write(repr(time.perf_counter() - t))")
    proc = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, check=True, text=True)
    return float(proc.stderr.strip().splitlines()[-1])


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--quick", action="store_true", help="smaller sizes and one suite run")
    args = p.parse_args(argv)
    sizes = (8, 64) if args.quick else (8, 64, 256, 1024)
    repeat = 20 if args.quick else 50
    print(f"{'kernel':<28}{'python':>14}{'compiled':>14}")
    for row in kernel_rows(sizes, 2**31 - 1, repeat):
        print(f"{row[0]:<28}{row[1]:>14}{row[2]:>14}")
    if _ckernels is None:
        print("compiled extension not built; end-to-end comparison skipped")
        return 0
    py, c = suite_time(True), suite_time(False)
    print(f"suite {' '.join(SUITE_JOB[1:5])}: python {py:.2f}s, compiled {c:.2f}s, ratio {py / c:.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
