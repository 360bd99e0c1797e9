"""Time the brute-force oracle kernels on both backends.

    python benchmarks/bench_kernels.py [--repeat N]

Valid couples are used so every kernel scans its whole grid.
"""
import argparse
import time

from hahnfield import _kernels, example_couple
from hahnfield.couples import _scaled_table, int_grid

KERNELS = {
    "A3": _kernels.a3_violation,
    "A1": _kernels.a1_violation,
    "small": _kernels.small_violation,
}


def bench(fn, grid, psi, backend, repeat):
    fn(grid, psi, backend)  # warm-up, includes JIT compile for numba
    t = time.perf_counter()
    for _ in range(repeat):
        fn(grid, psi, backend)
    return (time.perf_counter() - t) / repeat


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    print(f"{'kernel':<7}{'n':>3}{'r':>3}{'grid':>7}" + "".join(f"{b:>12}" for b in backends) + "   speedup")
    for n, r in [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3)]:
        psi, _ = _scaled_table(example_couple(n))
        grid = int_grid(n, r)
        for name, fn in KERNELS.items():
            times = [bench(fn, grid, psi, b, args.repeat) for b in backends]
            speed = f"{times[0] / times[1]:8.1f}x" if len(times) > 1 else ""
            print(f"{name:<7}{n:>3}{r:>3}{len(grid):>7}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times) + speed)


if __name__ == "__main__":
    main()
