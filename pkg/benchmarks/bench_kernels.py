"""Time the compiled and numpy kernel backends on the same inputs.

    python benchmarks/bench_kernels.py [--dims 6 8 10] [--repeat 3]

Each row reports the best of ``--repeat`` runs per backend and checks that
both backends return identical arrays.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from addposet import kernels
from addposet.plainness import _tail_basis_array
from addposet.poset import _phi_table, from_functionals, pointed_poset, trivial_poset


def best_of(fn, repeat: int):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def workloads(dim: int):
    rng = np.random.default_rng(dim)
    S = sorted({int(x) for x in rng.integers(1, 1 << dim, size=dim + 4)} | {1 << i for i in range(dim)})
    A = from_functionals(dim, S, materialize=True)
    phi = _phi_table(dim, S)
    P = pointed_poset(dim, (1 << dim) - 1)
    members = np.array(sorted(range(P.size), key=lambda x: (P.tail_sizes[x], x)), dtype=np.int64)
    tb = _tail_basis_array(trivial_poset(dim))
    n = A.size
    return {
        "subset_table": lambda k: k.subset_table(phi),
        "transpose_table": lambda k: k.transpose_table(A.down, n),
        "axiom_scan": lambda k: k.axiom_scan(A.down, A.up, n),
        "order_preserving": lambda k: k.order_preserving(tb, dim),
        "incidence_inverse": lambda k: k.incidence_inverse(P.down, members),
    }


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", type=int, nargs="+", default=[6, 8, 10])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    impls = kernels.implementations()
    if "cython" not in impls:
        print("compiled kernels unavailable; timing the numpy backend only")
    print(f"{'kernel':<18} {'dim':>3} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for dim in args.dims:
        for name, call in workloads(dim).items():
            tp, rp = best_of(lambda: call(impls["python"]), args.repeat)
            if "cython" in impls:
                tc, rc = best_of(lambda: call(impls["cython"]), args.repeat)
                if not np.array_equal(rp, rc):
                    raise SystemExit(f"backends disagree on {name} at dim {dim}")
                print(f"{name:<18} {dim:>3} {tp:>10.4f} {tc:>10.4f} {tp / max(tc, 1e-9):>7.1f}x")
            else:
                print(f"{name:<18} {dim:>3} {tp:>10.4f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
