"""Compare the compiled and pure-numpy kernel backends on the two hot paths.

Usage: python3 benchmarks/bench_kernels.py [--repeats N]

Each task is solved once per backend per repeat; the script reports the best
wall time for each backend and checks that both produce the same optimum.
"""

import argparse
import time

from repising import kernels
from repising.encoding import RepetitionEncoding, encode
from repising.graph import build_grid
from repising.model import make_ladder_instance
from repising.solvers import solve_brute, solve_frontier


def build_tasks():
    brute_model = make_ladder_instance(10, 3)  # 20 spins, 2^20 states
    encoded = encode(
        make_ladder_instance(8, 0), RepetitionEncoding(build_grid(3, 3), 1.0)
    )  # 144 spins, boundary width 19
    return [
        ("brute force, 20 spins", lambda: solve_brute(brute_model)),
        ("frontier DP, 144 spins", lambda: solve_frontier(encoded)),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    names = sorted(kernels.available())
    print(f"backends: {', '.join(names)}")
    for label, run in build_tasks():
        timings = {}
        values = {}
        for backend in names:
            with kernels.override(backend):
                best = float("inf")
                for _ in range(args.repeats):
                    start = time.perf_counter()
                    result = run()
                    best = min(best, time.perf_counter() - start)
            timings[backend] = best
            values[backend] = result.value
        reference = values[names[0]]
        assert all(abs(v - reference) <= 1e-9 for v in values.values()), values
        line = "  ".join(f"{b}: {timings[b] * 1e3:8.2f} ms" for b in names)
        if len(names) == 2 and "compiled" in timings and "fallback" in timings:
            line += f"  speedup: {timings['fallback'] / timings['compiled']:.1f}x"
        print(f"{label:26s} {line}  (value {reference!r})")


if __name__ == "__main__":
    main()
