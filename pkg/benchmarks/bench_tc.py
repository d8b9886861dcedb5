"""Coset enumeration timings: compiled kernel against the pure-Python fallback.

Usage: python benchmarks/bench_tc.py [--repeat N]
"""
from __future__ import annotations

import argparse
import time

from kapcheck.decide import TC_BACKEND, todd_coxeter
from kapcheck.present import Presentation

GROUPS = [
    ("A5", Presentation.parse(2, "xx,yyy,xyxyxyxyxy"), 60),
    ("PSL(2,7)", Presentation.parse(2, "xx,yyy,xyxyxyxyxyxyxy,xyXYxyXYxyXYxyXY"), 168),
    ("(2,3,7;8)", Presentation.parse(2, "xx,yyy,xyxyxyxyxyxyxy," + "xyXY" * 8), 10752),
    ("C100 x C100", Presentation.parse(2, "x" * 100 + "," + "y" * 100 + ",xyXY"), 10000),
]


def best_time(p, backend, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        table = todd_coxeter(p, backend=backend)
        best = min(best, time.perf_counter() - start)
    return best, table.index


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if TC_BACKEND != "cython":
        print("compiled kernel not built; only the Python backend is timed")
    backends = ["cython", "python"] if TC_BACKEND == "cython" else ["python"]
    print(f"{'group':<12} {'order':>7} " + " ".join(f"{b:>10}" for b in backends) + "  speedup")
    for name, p, order in GROUPS:
        times = {}
        for b in backends:
            secs, index = best_time(p, b, args.repeat)
            assert index == order, (name, b, index)
            times[b] = secs
        cells = " ".join(f"{times[b] * 1000:>8.1f}ms" for b in backends)
        speed = f"{times['python'] / times['cython']:7.1f}x" if len(backends) == 2 else ""
        print(f"{name:<12} {order:>7} {cells}  {speed}")


if __name__ == "__main__":
    main()
