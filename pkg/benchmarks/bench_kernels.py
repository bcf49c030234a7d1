"""Benchmark the numba kernels against the pure-numpy fallback.

Workloads are the real hot paths: exhaustive associativity scans over
doubled carriers, congruence-lattice enumeration (union-find closure), the
strongly-prime element scan, and the radical iteration.

    python benchmarks/bench_kernels.py [--repeats N]

The same comparison is forced through the fallback automatically when numba
is unavailable or PAIRSPEC_NO_NUMBA=1 is set (in which case only the numpy
column appears).
"""

import argparse
import time

from pairspec import _kernels, catalog
from pairspec.congruences import all_relation, diagonal, enumerate_congruences
from pairspec.constructions import double
from pairspec.spectrum import classify_congruence_elementwise, sqrt_phi


def _workloads():
    fn_sb = catalog.build("function_sb_sat2")
    d81 = double(fn_sb).structure
    st = catalog.build("supertropical_c2")
    signs = catalog.build("power_signs")

    def assoc_scan():
        assert _kernels.first_nonassoc(d81.mul)[0] < 0

    def distrib_scan():
        assert _kernels.first_nondistrib(d81.add, d81.mul)[0] < 0

    def lattice_fn_sb():
        assert len(enumerate_congruences(fn_sb)) == 32

    def lattice_supertropical():
        assert len(enumerate_congruences(st)) == 4

    def strongly_prime_scan():
        classify_congruence_elementwise(fn_sb, diagonal(fn_sb))
        classify_congruence_elementwise(fn_sb, all_relation(fn_sb))

    def radical_iteration():
        sqrt_phi(signs, diagonal(signs))

    return [
        ("assoc scan, 81x81 doubled table (81^3 triples)", assoc_scan),
        ("distributivity scan, 81x81 doubled table", distrib_scan),
        ("congruence lattice, 9-element function pair", lattice_fn_sb),
        ("congruence lattice, 5-element layered pair", lattice_supertropical),
        ("elementwise prime scans, 9-element pair", strongly_prime_scan),
        ("radical iteration, 7-element power-set pair", radical_iteration),
    ]


def bench(repeats: int):
    backends = _kernels.available_backends()
    workloads = _workloads()
    print(f"backends: {', '.join(backends)}; repeats: {repeats}\n")
    header = f"{'workload':<48}" + "".join(f"{b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    old = _kernels.get_backend()
    try:
        for label, fn in workloads:
            times = {}
            for backend in backends:
                _kernels.set_backend(backend)
                fn()  # warm (and JIT-compile) outside the clock
                best = min(
                    _timed(fn) for _ in range(repeats)
                )
                times[backend] = best
            row = f"{label:<48}" + "".join(
                f"{times[b] * 1e3:>10.2f}ms" for b in backends
            )
            if "numba" in times and "numpy" in times:
                row += f"{times['numpy'] / times['numba']:>9.1f}x"
            print(row)
    finally:
        _kernels.set_backend(old)


def _timed(fn) -> float:
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=5)
    bench(ap.parse_args().repeats)
