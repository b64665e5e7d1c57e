#!/usr/bin/env python3
"""Benchmark the compiled elimination kernel against the pure fallback.

Two parts: a microbenchmark of rref on random matrices of increasing size,
and an end-to-end workload (the Hom/Ext tables of an incidence algebra)
run in a subprocess per backend so the import-time selection applies.

Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np


def bench_rref(rref, sizes, p, reps):
    rng = np.random.default_rng(42)
    out = []
    for r, c in sizes:
        mats = [rng.integers(0, p, size=(r, c)).astype(np.uint8) for _ in range(reps)]
        t0 = time.perf_counter()
        for m in mats:
            rref(m, p)
        out.append((time.perf_counter() - t0) / reps)
    return out


WORKLOAD = r"""
import time
from torscat.algebra import incidence_algebra
from torscat.torsion import ModuleContext
from torscat.poset import interval_poset
from torscat._kernels import backend_name
t0 = time.perf_counter()
ctx = ModuleContext.for_algebra(incidence_algebra(interval_poset(2)), 2)
ctx.hom_table()
ctx.ext_table(1)
ctx.ext_table(2)
for j in range(ctx.k):
    ctx.subquot_pairs(j)
print(f"{backend_name()}: int:2 hom/ext/submodule tables in {time.perf_counter()-t0:.3f}s")
"""

WORKLOAD_BIG = r"""
import time
from torscat.algebra import incidence_algebra
from torscat.torsion import ModuleContext, enumerate_torsion_pairs, is_omega_n
from torscat.poset import interval_poset
from torscat._kernels import backend_name
t0 = time.perf_counter()
ctx = ModuleContext.for_algebra(incidence_algebra(interval_poset(3)), 2)
t1 = time.perf_counter()
ctx.hom_table()
ctx.ext_table(1)
ctx.ext_table(2)
t2 = time.perf_counter()
TL = enumerate_torsion_pairs(ctx, class_cap=2000)
counts = (TL.n, sum(1 for pr in TL.pairs if is_omega_n(pr, 1)),
          sum(1 for pr in TL.pairs if is_omega_n(pr, 2)))
t3 = time.perf_counter()
assert counts == (808, 14, 239)
print(f"{backend_name()}: int:3 full run {t3-t0:.1f}s "
      f"(indecomposables {t1-t0:.1f}s, hom/ext tables {t2-t1:.1f}s, lattice+predicates {t3-t2:.1f}s)")
"""


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true", help="skip the large workload")
    args = ap.parse_args()

    from torscat import _gfpure

    backends = [("pure", _gfpure.rref)]
    try:
        from torscat import _gfcore

        backends.append(("compiled", _gfcore.rref))
    except ImportError:
        print("compiled kernel not available; benchmarking the fallback only")

    sizes = [(8, 8), (16, 16), (32, 32), (64, 64), (128, 128), (64, 256)]
    reps = 200 if args.quick else 1000
    print(f"rref microbenchmark over F_2, {reps} matrices per size (mean seconds per call)")
    header = f"{'size':>10}" + "".join(f"{name:>14}" for name, _ in backends)
    print(header)
    results = {name: bench_rref(fn, sizes, 2, reps) for name, fn in backends}
    for i, (r, c) in enumerate(sizes):
        line = f"{f'{r}x{c}':>10}"
        for name, _ in backends:
            line += f"{results[name][i]:>14.2e}"
        print(line)
    if len(backends) == 2:
        print("speedup compiled/pure:")
        for i, (r, c) in enumerate(sizes):
            print(f"  {r}x{c}: {results['pure'][i] / results['compiled'][i]:.1f}x")

    print("\nend-to-end workloads (subprocess per backend):")
    sys.stdout.flush()
    for pure in ("1", ""):
        env = dict(os.environ)
        if pure:
            env["TORSCAT_PURE"] = "1"
        else:
            env.pop("TORSCAT_PURE", None)
        subprocess.run([sys.executable, "-c", WORKLOAD], env=env, check=True)
        if not args.quick:
            subprocess.run([sys.executable, "-c", WORKLOAD_BIG], env=env, check=True)


if __name__ == "__main__":
    main()
