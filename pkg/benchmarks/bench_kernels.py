"""Benchmark the compiled kernels against the pure-Python fallback.

The two hot loops are the exact integer cone-membership window scan and the
pairwise symplectic commutation check.  Run:

    python benchmarks/bench_kernels.py [--radius 100] [--pairs 400]
"""

import argparse
import random
import time
from fractions import Fraction

from conesectors import _kernels_py
from conesectors.geometry import ConeSpec, LatticeWindow, int_cone_params

try:
    from conesectors import _kernels as compiled
except ImportError:
    compiled = None


def _time(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_scan(radius: int):
    cones = [
        ConeSpec((Fraction(1, 2), Fraction(-3, 2)), (3, 2), Fraction(7, 10)),
        ConeSpec((Fraction(0), Fraction(0)), (1, 0), Fraction(0)),
        ConeSpec((Fraction(-5, 2), Fraction(7, 2)), (-4, 7), Fraction(-3, 5)),
    ]
    window = LatticeWindow.square(radius)
    rows = []
    for c in cones:
        args = int_cone_params(c) + (window.lo[0], window.hi[0],
                                     window.lo[1], window.hi[1])
        t_py, ref = _time(lambda: _kernels_py.scan_cone_2d(*args))
        row = {"cone": c.to_json(), "points": len(ref), "python_s": t_py}
        if compiled is not None:
            t_c, got = _time(lambda: compiled.scan_cone_2d(*args))
            assert got == ref, "backend disagreement"
            row["compiled_s"] = t_c
            row["speedup"] = t_py / t_c if t_c else float("inf")
        rows.append(row)
    return rows


def bench_commutation(pairs: int):
    rng = random.Random(0)
    words_bits = 544  # a radius-8 edge lattice
    x1 = [rng.getrandbits(words_bits) for _ in range(pairs)]
    z1 = [rng.getrandbits(words_bits) for _ in range(pairs)]
    x2 = [rng.getrandbits(words_bits) for _ in range(pairs)]
    z2 = [rng.getrandbits(words_bits) for _ in range(pairs)]
    t_py, ref = _time(lambda: _kernels_py.commutation_violations(
        x1, z1, x2, z2, limit=10**9))
    row = {"pairs": pairs * pairs, "violations": len(ref), "python_s": t_py}
    if compiled is not None:
        t_c, got = _time(lambda: compiled.commutation_violations(
            x1, z1, x2, z2, limit=10**9))
        assert got == ref, "backend disagreement"
        row["compiled_s"] = t_c
        row["speedup"] = t_py / t_c if t_c else float("inf")
    return row


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--radius", type=int, default=100)
    parser.add_argument("--pairs", type=int, default=400)
    args = parser.parse_args()

    print(f"compiled backend available: {compiled is not None}")
    print(f"\nwindow scan, radius {args.radius} "
          f"({(2 * args.radius + 1) ** 2} points per cone):")
    for row in bench_scan(args.radius):
        line = f"  {row['points']:7d} points  python {row['python_s'] * 1e3:8.2f} ms"
        if "compiled_s" in row:
            line += (f"  compiled {row['compiled_s'] * 1e3:8.2f} ms"
                     f"  speedup {row['speedup']:6.1f}x")
        print(line)

    print(f"\nsymplectic commutation, {args.pairs}x{args.pairs} Pauli pairs "
          f"(544-bit masks):")
    row = bench_commutation(args.pairs)
    line = f"  {row['pairs']:7d} pairs   python {row['python_s'] * 1e3:8.2f} ms"
    if "compiled_s" in row:
        line += (f"  compiled {row['compiled_s'] * 1e3:8.2f} ms"
                 f"  speedup {row['speedup']:6.1f}x")
    print(line)


if __name__ == "__main__":
    main()
