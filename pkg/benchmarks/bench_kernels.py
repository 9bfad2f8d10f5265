"""Compare the compiled and pure-Python kernels on lattice and marks workloads.

    python3 benchmarks/bench_kernels.py [--groups sym:5 alt:5 ...] [--repeat 3]
"""

import argparse
import statistics
import time
from contextlib import contextmanager

from eqtt import _pykernels, kernels
from eqtt.burnside import table_of_marks
from eqtt.specparse import construct
from eqtt.spectrum import build_spectrum

try:
    from eqtt import _ckernels
except ImportError:
    _ckernels = None

NAMES = ("close_subgroup", "transporter_count", "is_normalized_by")


@contextmanager
def backend(impl):
    saved = {n: getattr(kernels, n) for n in NAMES}
    for n in NAMES:
        setattr(kernels, n, getattr(impl, n))
    try:
        yield
    finally:
        for n, f in saved.items():
            setattr(kernels, n, f)


def workload(spec):
    G = construct(spec)
    t0 = time.perf_counter()
    G.classes
    t1 = time.perf_counter()
    table_of_marks(G)
    t2 = time.perf_counter()
    build_spectrum(G, None, 4, True)
    t3 = time.perf_counter()
    return t1 - t0, t2 - t1, t3 - t2


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--groups", nargs="+",
                    default=["sym:4", "dihedral:16 x cyclic:2", "alt:5", "sym:5", "sym:4 x cyclic:3"])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    impls = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    if not _ckernels:
        print("compiled extension not built; timing the fallback only")
    print(f"{'group':<26}{'backend':<9}{'lattice':>10}{'marks':>10}{'spectrum':>10}")
    for spec in args.groups:
        best = {}
        for name, impl in impls:
            with backend(impl):
                runs = [workload(spec) for _ in range(args.repeat)]
            cols = [statistics.median(r[i] for r in runs) for i in range(3)]
            best[name] = sum(cols)
            print(f"{spec:<26}{name:<9}" + "".join(f"{c:>9.3f}s" for c in cols))
        if len(best) == 2:
            print(f"{'':<26}speedup  {best['python'] / best['cython']:.2f}x")


if __name__ == "__main__":
    main()
