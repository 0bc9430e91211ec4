"""Compare the compiled and pure-Python elimination kernels.

    python benchmarks/bench_kernel.py [--repeat N]

Two workloads: random sparse Gaussian-integer matrices fed straight to each
kernel, and a full invariant report of a catalog nilmanifold with the
dispatcher pinned to one kernel at a time.  Every timing is the best of N runs.
"""

from __future__ import annotations

import argparse
import random
import timeit

from ccx import _backend, invariants
from ccx.dcalg import catalog_get
from ccx.invariants import full_report


def random_rows(nrows, ncols, per_row, seed, imaginary=True):
    """Rows shaped like wedge-product differentials: a few unit-sized entries each."""
    rng = random.Random(seed)
    values = [(1, 0), (-1, 0), (2, 0)] + ([(0, 1), (0, -1), (1, 1)] if imaginary else [])
    return [{j: rng.choice(values) for j in rng.sample(range(ncols), per_row)} for _ in range(nrows)]


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def bench_matrices(kernels, repeat):
    cases = [
        ("real 200x200, 3 per row", random_rows(200, 200, 3, 1, imaginary=False)),
        ("gaussian 200x200, 3 per row", random_rows(200, 200, 3, 2)),
        ("gaussian 600x400, 2 per row", random_rows(600, 400, 2, 3)),
    ]
    for label, rows in cases:
        ncols = 1 + max((j for r in rows for j in r), default=0)
        times = {}
        for k in kernels:
            try:
                times[k.BACKEND] = best(lambda k=k: k.echelon(rows, ncols, True), repeat)
            except OverflowError:  # the dispatcher would hand this call to the bigint kernel
                times[k.BACKEND] = None
        yield label, times


def bench_reports(kernels, repeat, names):
    for name in names:
        c = catalog_get(name).complex()
        times = {}
        for k in kernels:
            saved = _backend._compiled
            _backend._compiled = k if k.BACKEND == "cython" else None

            def run():
                invariants._PIECES.clear()
                c.__dict__.pop("_ccx_pieces", None)
                full_report(c)

            try:
                times[k.BACKEND] = best(run, repeat)
            finally:
                _backend._compiled = saved
        yield f"full report of {name}", times


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--entries", nargs="*", default=["iwasawa", "xn:2"])
    args = parser.parse_args(argv)
    kernels = _backend.kernels()
    names = [k.BACKEND for k in kernels]
    if "cython" not in names:
        print("compiled kernel not built; only the pure-Python kernel is available")
    print(f"{'workload':32s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) == 2 else ""))
    for label, times in [*bench_matrices(kernels, args.repeat), *bench_reports(kernels, args.repeat, args.entries)]:
        line = f"{label:32s}" + "".join(
            f"{'overflow':>12s}" if times[n] is None else f"{times[n] * 1e3:10.1f}ms" for n in names)
        if len(names) == 2 and None not in times.values():
            line += f"{times['python'] / times['cython']:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
