"""Time the numba and numpy GF(2) kernels on random square matrices.

    python3 benchmarks/bench_gf2.py [--sizes 64 256 512] [--repeat 5]

Each kernel is warmed up once so numba compilation is not counted.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from hfcalc import _kernels
from hfcalc.gf2 import BitMatrix, reduce


def random_matrix(rng: np.random.Generator, n: int) -> BitMatrix:
    return BitMatrix.from_dense(rng.integers(0, 2, size=(n, n), dtype=np.uint8))


def time_backend(name: str, a: BitMatrix, b: BitMatrix, repeat: int) -> dict[str, float]:
    _kernels.use_backend(name)
    jobs = {"rank": lambda: a.rank(), "rref": lambda: reduce(a), "matmul": lambda: a @ b}
    out = {}
    for label, job in jobs.items():
        job()
        out[label] = min(timeit.repeat(job, number=1, repeat=repeat))
    return out


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[64, 256, 512])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    rng = np.random.default_rng(args.seed)
    print(f"{'n':>5} {'kernel':>7} " + " ".join(f"{b:>10}" for b in backends) + ("   speedup" if len(backends) > 1 else ""))
    for n in args.sizes:
        a, b = random_matrix(rng, n), random_matrix(rng, n)
        timings = {name: time_backend(name, a, b, args.repeat) for name in backends}
        for kernel in ("rank", "rref", "matmul"):
            row = " ".join(f"{timings[name][kernel] * 1e3:9.3f}ms" for name in backends)
            extra = ""
            if len(backends) > 1:
                extra = f"  {timings['numpy'][kernel] / timings['numba'][kernel]:7.1f}x"
            print(f"{n:>5} {kernel:>7} {row}{extra}")


if __name__ == "__main__":
    main()
