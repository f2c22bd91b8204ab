#!/usr/bin/env python3
"""Benchmark the compiled run kernel against the pure-Python fallback.

The workload is the differential harness itself (exhaustive small-string
runs), which is how the engine spends almost all of its cycles in practice.

    python3 benchmarks/bench_kernels.py [--quick]
"""

import argparse
import time

from oia.engine import HAVE_C_KERNEL
from oia.oracles import differential_test
from oia.zoo import build_machine

WORKLOADS = [
    ("centre", dict(max_len=12)),
    ("eq", dict(max_len=12)),
    ("pal", dict(max_len=11)),
    ("pal2", dict(max_len=9)),
    ("bal", dict(max_len=12)),
    ("sq", dict(max_len=0, n_max=5, m_max=30)),
    ("pow", dict(max_len=0, n_max=4, m_max=20)),
]

QUICK = [
    ("centre", dict(max_len=9)),
    ("bal", dict(max_len=9)),
    ("pal2", dict(max_len=7)),
]


def time_backend(backend: str, workloads) -> float:
    start = time.perf_counter()
    for name, kwargs in workloads:
        machine = build_machine(name)
        rep = differential_test(machine, name, backend=backend, **kwargs)
        if not rep.passed:
            raise SystemExit(f"workload {name} failed on backend {backend}")
    return time.perf_counter() - start


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true", help="smaller workload")
    args = parser.parse_args()
    workloads = QUICK if args.quick else WORKLOADS

    py = time_backend("py", workloads)
    print(f"pure-python kernel: {py:8.3f} s")
    if HAVE_C_KERNEL:
        c = time_backend("c", workloads)
        print(f"compiled kernel:    {c:8.3f} s")
        print(f"speedup:            {py / c:8.1f} x")
    else:
        print("compiled kernel unavailable (install built without Cython)")


if __name__ == "__main__":
    main()
