#!/usr/bin/env python3
"""Compare the compiled kernel against the pure-Python fallback.

Two workloads:

* raw matrix products at a few sizes (the operation the kernels exist for);
* a full departure-epoch evolution on a blocking chain, with the backend
  swapped under the engine, to show what the fast path buys end to end.

Usage: python benchmarks/bench_kernels.py [--sizes 20,40,80] [--repeats 5]
       [--chain 12] [--steps 300]
"""

import argparse
import random
import time

from mpqnet import engine
from mpqnet.maxplus import _backend, _kernel_py
from mpqnet.maxplus.values import EPS
from mpqnet.network import INFINITE, Blocking, NetworkSpec, SeededService, validate

try:
    from mpqnet.maxplus import _kernel_c
except ImportError:  # pragma: no cover - build without the extension
    _kernel_c = None


def _random_flat(rng, size):
    return [
        EPS if rng.random() < 0.2 else rng.randint(-50, 50) for _ in range(size)
    ]


def _best_of(repeats, fn):
    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - started)
    return best


def bench_products(kernels, sizes, repeats):
    rng = random.Random(1234)
    print("matrix product (square, 20% empty entries)")
    for n in sizes:
        a = _random_flat(rng, n * n)
        b = _random_flat(rng, n * n)
        timings = {
            name: _best_of(repeats, lambda k=k: k.mat_mul(a, b, n, n, n))
            for name, k in kernels
        }
        _print_row(f"  n={n:<4d}", timings)


def _blocking_chain(n):
    arcs = frozenset((i, i + 1) for i in range(1, n))
    contents = (INFINITE,) + (0,) * (n - 1)
    capacities = (INFINITE,) + (1,) * (n - 1)
    return validate(
        NetworkSpec(n, arcs, contents, capacities, Blocking.MANUFACTURING)
    )


def bench_engine(kernels, chain, steps, repeats):
    spec = _blocking_chain(chain)
    service = SeededService(seed=99, max_value=9)
    print(
        f"departure evolution (chain of {chain}, manufacturing blocking, "
        f"K={steps}, implicit method)"
    )
    timings = {}
    original = _backend.kernel
    try:
        for name, kernel in kernels:
            _backend.kernel = kernel
            timings[name] = _best_of(
                repeats,
                lambda: engine.run(spec, service, steps, method="implicit"),
            )
    finally:
        _backend.kernel = original
    _print_row("  run", timings)


def _print_row(label, timings):
    parts = [f"{name} {value * 1e3:9.3f} ms" for name, value in timings.items()]
    line = f"{label}  " + "   ".join(parts)
    if "py" in timings and "c" in timings and timings["c"] > 0:
        line += f"   speedup {timings['py'] / timings['c']:6.1f}x"
    print(line)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="20,40,80")
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--chain", type=int, default=12)
    parser.add_argument("--steps", type=int, default=300)
    args = parser.parse_args()

    kernels = [("py", _kernel_py)]
    if _kernel_c is not None:
        kernels.append(("c", _kernel_c))
        print("compiled kernel: available")
    else:
        print("compiled kernel: NOT BUILT - timing the fallback only")
    print(f"active backend at import: {_backend.BACKEND}")
    print()

    sizes = [int(s) for s in args.sizes.split(",") if s]
    bench_products(kernels, sizes, args.repeats)
    print()
    bench_engine(kernels, args.chain, args.steps, args.repeats)


if __name__ == "__main__":
    main()
