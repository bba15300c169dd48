"""Compare the compiled and pure-Python modular kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Times charpoly_mod and resultant_mod on random inputs modulo a CRT prime,
then a full exact Hecke charpoly with each backend swapped in.
"""

import argparse
import random
import time

from modpcensus import _pykernels, intpoly, kernels
from modpcensus.intpoly import crt_prime, hecke_matrix

try:
    from modpcensus import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def row(label, t_py, t_ext):
    speedup = f"{t_py / t_ext:8.1f}x" if t_ext else "       -"
    ext = f"{t_ext * 1e3:10.2f}" if t_ext else "         -"
    print(f"{label:<28}{t_py * 1e3:10.2f}{ext}{speedup}")


def with_backend(module, fn):
    saved = kernels.charpoly_mod, kernels.resultant_mod
    kernels.charpoly_mod, kernels.resultant_mod = module.charpoly_mod, module.resultant_mod
    try:
        return fn()
    finally:
        kernels.charpoly_mod, kernels.resultant_mod = saved


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    q = crt_prime(0)

    print(f"compiled kernels available: {_kernels is not None}")
    print(f"{'case':<28}{'python ms':>10}{'cython ms':>10}{'speedup':>9}")

    for d in (8, 16, 32, 64):
        rows = [[rng.randrange(q) for _ in range(d)] for _ in range(d)]
        t_py = best_of(lambda: _pykernels.charpoly_mod(rows, q), args.repeat)
        t_ext = best_of(lambda: _kernels.charpoly_mod(rows, q), args.repeat) if _kernels else None
        row(f"charpoly_mod d={d}", t_py, t_ext)

    for n in (16, 64, 128):
        f = [rng.randrange(q) for _ in range(n)] + [1]
        g = [rng.randrange(q) for _ in range(n - 1)] + [1]
        t_py = best_of(lambda: _pykernels.resultant_mod(f, g, q), args.repeat)
        t_ext = best_of(lambda: _kernels.resultant_mod(f, g, q), args.repeat) if _kernels else None
        row(f"resultant_mod deg={n}", t_py, t_ext)

    for k in (120, 240):
        m = hecke_matrix(k, 2)
        t_py = best_of(lambda: with_backend(_pykernels, lambda: intpoly.charpoly(m)), 1)
        t_ext = best_of(lambda: with_backend(_kernels, lambda: intpoly.charpoly(m)), 1) if _kernels else None
        row(f"exact charpoly T_2, k={k}", t_py, t_ext)


if __name__ == "__main__":
    main()
