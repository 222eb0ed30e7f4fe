"""Compiled vs numpy kernels on real factorization sets.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--json]

Each case packs Z(a) for one element and times distance_matrix, bottleneck
and components_at under both backends. Results must agree before a time is
reported.
"""
import argparse
import json
import time

import numpy as np

from condmon import _kernels_py, factor
from condmon.conductor import IdealExtensionMonoid
from condmon.constructions import cycle_monoid

try:
    from condmon import _kernels as _kernels_c
except ImportError:
    _kernels_c = None

CASES = [
    ("gens{(1,1)} at (8,8)", IdealExtensionMonoid([(1, 1)]), (8, 8)),
    ("gens{(1,1)} at (10,10)", IdealExtensionMonoid([(1, 1)]), (10, 10)),
    ("gens{(1,2),(2,1)} at (8,9)", IdealExtensionMonoid([(1, 2), (2, 1)]), (8, 9)),
    ("cycle m=3 at (2,...,2)", cycle_monoid(3), (2,) * 6),
]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def run_case(name, H, a, repeat):
    ef = factor.analyze(H, a)
    fact, lens = ef.packed()
    row = {"case": name, "Z": len(ef)}
    results = {}
    for impl in [_kernels_py] + ([_kernels_c] if _kernels_c else []):
        t_d, D = best_of(lambda: impl.distance_matrix(fact, lens), repeat)
        t_b, c = best_of(lambda: impl.bottleneck(D), repeat)
        t_u, comps = best_of(lambda: impl.components_at(fact, lens, 2), repeat)
        results[impl.BACKEND] = (D, c, comps)
        row[impl.BACKEND] = {"distance_matrix": t_d, "bottleneck": t_b, "components_at": t_u}
    if len(results) == 2:
        (D1, c1, k1), (D2, c2, k2) = results.values()
        assert np.array_equal(D1, D2) and c1 == c2 and k1 == k2, f"backends disagree on {name}"
        row["speedup"] = {k: row["python"][k] / max(row["cython"][k], 1e-9) for k in row["python"]}
    return row


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = [run_case(name, H, a, args.repeat) for name, H, a in CASES]
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    if _kernels_c is None:
        print("compiled extension not built; showing the numpy backend only")
    print(f"{'case':30} {'|Z|':>6} {'kernel':16} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for r in rows:
        for k in ("distance_matrix", "bottleneck", "components_at"):
            py = r["python"][k]
            cy = r.get("cython", {}).get(k)
            sp = r.get("speedup", {}).get(k)
            print(f"{r['case']:30} {r['Z']:>6} {k:16} {py:>10.4f} {cy if cy is None else f'{cy:10.4f}':>10} "
                  f"{'' if sp is None else f'{sp:7.1f}x':>8}")


if __name__ == "__main__":
    main()
