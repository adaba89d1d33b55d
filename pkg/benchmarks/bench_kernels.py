"""Compare the compiled and pure-Python linear-algebra kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times exact RREF on the identity systems the solver builds, and GF(p) RREF
on the evaluated systems the oracle builds.  Both backends must agree.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from lcas import _kernels_py as py_kernels
from lcas.lca import fixture, truncated_extension
from lcas.solver import DegreeBound, DerivationKind, build_system, layout_for
from lcas.solver.oracle import PRIMES, evaluated_matrix

try:
    from lcas import _ckernels as c_kernels
except ImportError:
    c_kernels = None

CASES = [
    ("gder", "vir", DegreeBound(4, 3)),
    ("cder", "cur_sl2", DegreeBound(3, 2)),
    ("gder", "cur_sl2", DegreeBound(2, 2)),
    ("cder", "vir~", DegreeBound(4, 3)),
]


def algebra(name):
    return truncated_extension(fixture("vir")) if name == "vir~" else fixture(name)


def best(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = [("python", py_kernels)] + ([("cython", c_kernels)] if c_kernels else [])
    if c_kernels is None:
        print("compiled kernels not built; timing the fallback only")
    header = f"{'case':28} {'kernel':10} {'size':>12} " + " ".join(f"{n:>10}" for n, _ in backends)
    print(header)
    print("-" * len(header))
    p = PRIMES[0]
    for tag, name, bounds in CASES:
        R = algebra(name)
        kind = DerivationKind(tag)
        layout = layout_for(kind, R, bounds)
        rows = build_system(kind, R, layout)
        M, _ = evaluated_matrix(kind, R, layout, p)
        label = f"{tag} {name} {bounds.max_del},{bounds.max_lam}"

        exact = [best(lambda k=k: k.exact_rref(rows, layout.size), args.repeat) for _, k in backends]
        assert all(e[1] == exact[0][1] for e in exact), "exact kernels disagree"
        print(f"{label:28} {'exact':10} {f'{len(rows)}x{layout.size}':>12} "
              + " ".join(f"{t * 1e3:8.1f}ms" for t, _ in exact))

        modp = [best(lambda k=k: k.rref_mod_p(M, p), args.repeat) for _, k in backends]
        assert all(m[1][0] == modp[0][1][0] and np.array_equal(m[1][1], modp[0][1][1]) for m in modp)
        print(f"{'':28} {'mod p':10} {f'{M.shape[0]}x{M.shape[1]}':>12} "
              + " ".join(f"{t * 1e3:8.1f}ms" for t, _ in modp))


if __name__ == "__main__":
    main()
