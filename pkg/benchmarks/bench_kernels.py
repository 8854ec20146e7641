"""Compiled vs pure-Python kernels: sparse polynomial products and the search descent.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
from __future__ import annotations

import argparse
import random
import sys
import time

from newtonineq import _pykernels, kernels
from newtonineq.mpoly import pack

try:
    from newtonineq import _ckernels
except ImportError:
    _ckernels = None


def random_terms(nvars: int, nterms: int, seed: int, max_exp: int = 4) -> dict:
    rng = random.Random(seed)
    out: dict = {}
    while len(out) < nterms:
        key = pack([rng.randint(0, max_exp) for _ in range(nvars)])
        out[key] = rng.randint(-50, 50) or 1
    return out


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def bench_mul(repeat: int) -> None:
    print("sparse product                 compiled    python   speedup")
    for nvars, nterms in ((6, 300), (8, 600), (10, 1000)):
        t1 = random_terms(nvars, nterms, 1)
        t2 = random_terms(nvars, nterms, 2)
        py = best_of(lambda: _pykernels.mul_terms(t1, t2, nvars), repeat)
        if _ckernels is not None:
            assert kernels.mul_terms(t1, t2, nvars) == _pykernels.mul_terms(t1, t2, nvars)
            cc = best_of(lambda: kernels.mul_terms(t1, t2, nvars), repeat)
            print(f"  {nvars:2d} vars x {nterms:5d} terms   {cc:8.3f}s {py:8.3f}s {py / cc:8.2f}x")
        else:
            print(f"  {nvars:2d} vars x {nterms:5d} terms        n/a {py:8.3f}s")


def bench_descend(repeat: int) -> None:
    print("descent (n=9, 3 pairs)         compiled    python   speedup")
    x0 = [0.7, 1.3, 0.4, 1.1, 0.9, 2.0, 1.5, 0.8, 1.2]
    for iters in (10_000, 100_000):
        args = (x0, 3, 3, (3, 6), (2, 7), 1.0, iters, 0.5, 1e-4, 12345)
        py = best_of(lambda: _pykernels.descend(*args), repeat)
        if _ckernels is not None:
            assert _ckernels.descend(*args)[:3] == _pykernels.descend(*args)[:3]
            cc = best_of(lambda: _ckernels.descend(*args), repeat)
            print(f"  {iters:7d} iterations         {cc:8.4f}s {py:8.3f}s {py / cc:8.1f}x")
        else:
            print(f"  {iters:7d} iterations              n/a {py:8.3f}s")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    print(f"active backend: {kernels.BACKEND}")
    bench_mul(args.repeat)
    bench_descend(args.repeat)
    return 0


if __name__ == "__main__":
    sys.exit(main())
