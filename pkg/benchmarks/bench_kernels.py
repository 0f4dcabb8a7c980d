"""Compare the compiled and pure-Python kernels on representative workloads.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from desirability import _kernels
from desirability.lp import LpProblem, solve


def _lp_batch(rng, count: int = 200):
    out = []
    for _ in range(count):
        nv, m = int(rng.integers(5, 15)), int(rng.integers(5, 15))
        A = rng.uniform(-1, 1, size=(m, nv))
        b = rng.uniform(0, 1, size=m)
        c = rng.uniform(-1, 1, size=nv)
        out.append(LpProblem(c, A, ["<="] * m, b, [(0.0, 1.0)] * nv))
    return out


def bench_simplex(backend: str, problems) -> None:
    for p in problems:
        solve(p, backend=backend)


def bench_scans(backend: str, G, F) -> None:
    kern = _kernels.get_backend(backend)
    kern.dominance_scan(G, F)
    kern.scaling_scan(G, F)


def bench_integer(backend: str, cases) -> None:
    kern = _kernels.get_backend(backend)
    for G, f in cases:
        kern.integer_search(G, f, np.full(G.shape[0], 6, dtype=np.int64), 200_000)


def _timed(fn, repeat: int) -> float:
    best = np.inf
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    problems = _lp_batch(rng)
    G = np.ascontiguousarray(rng.uniform(-1, 1, size=(40, 4)))
    F = np.ascontiguousarray(rng.uniform(-2, 2, size=(20_000, 4)))
    cases = []
    for _ in range(20):
        Gi = np.ascontiguousarray(rng.integers(-3, 4, size=(4, 3)).astype(float))
        cases.append((Gi, np.ascontiguousarray(rng.integers(-20, 0, size=3).astype(float))))

    workloads = {
        "simplex (200 LPs)": lambda b: bench_simplex(b, problems),
        "dominance+scaling scans (40 x 20000)": lambda b: bench_scans(b, G, F),
        "integer search (20 unreachable targets)": lambda b: bench_integer(b, cases),
    }
    backends = _kernels.available_backends()
    print(f"{'workload':<42}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for name, fn in workloads.items():
        times = [_timed(lambda: fn(b), args.repeat) for b in backends]
        row = f"{name:<42}" + "".join(f"{t:>11.4f}s" for t in times)
        if len(times) > 1:
            row += f"{times[0] / times[1]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
