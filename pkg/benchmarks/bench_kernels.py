"""Compare the compiled kernels with the pure numpy fallback.

Run with ``python3 benchmarks/bench_kernels.py``.  Both backends are timed on
the same inputs and their outputs are compared for equality before any
timing is reported.
"""

import argparse
import time

import numpy as np

from qcactus import backend
from qcactus.hecke import kl_kernel_inputs


def _best(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def laurent_inputs(size, depth, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(-3, 4, size=(depth, size, size), dtype=np.int64)
    b = rng.integers(-3, 4, size=(depth, size, size), dtype=np.int64)
    a[:, rng.random((size, size)) < 0.8] = 0  # operators are sparse
    b[:, rng.random((size, size)) < 0.8] = 0
    return a, b


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--kl-n", type=int, default=5)
    args = p.parse_args(argv)
    names = backend.available()
    print(f"backends: {', '.join(names)} (selected: {backend.NAME})")
    rows = []
    cases = [("laurent_matmul", f"{s}x{s}, depth {d}", laurent_inputs(s, d, 7)) for s, d in ((64, 4), (243, 6))]
    cases.append(("kl_table", f"S{args.kl_n}", kl_kernel_inputs(args.kl_n)))
    for kernel, label, inputs in cases:
        results = {}
        times = {}
        for name in names:
            fn = getattr(backend.module(name), kernel)
            times[name], results[name] = _best(lambda: fn(*inputs), args.repeat)
        ref = results["python"]
        same = all(np.array_equal(ref, r) for r in results.values())
        rows.append((kernel, label, times, same))
    print(f"{'kernel':<16}{'input':<22}" + "".join(f"{n:>12}" for n in names) + f"{'speedup':>10}{'equal':>8}")
    for kernel, label, times, same in rows:
        speed = times["python"] / times["cython"] if "cython" in times else 1.0
        print(f"{kernel:<16}{label:<22}" + "".join(f"{times[n] * 1e3:>10.2f}ms" for n in names)
              + f"{speed:>9.1f}x{str(same):>8}")
        if not same:
            raise SystemExit(f"backends disagree on {kernel} ({label})")


if __name__ == "__main__":
    main()
