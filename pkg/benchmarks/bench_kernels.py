"""Timing comparison of the convolution backends.

Runs the jit-compiled and plain numpy kernels over a ladder of operand
sizes, checks that both produce identical coefficients, and reports the
best-of-N wall time per case. The second section times a full automaton
orbit (repeated matrix application) under each backend.

Usage:
    python3 benchmarks/bench_kernels.py [--p 3] [--repeats 5] [--steps 60]
"""

import argparse
import random
from time import perf_counter

import numpy as np

from cqca import PhaseVector, local_f, shear_g
from cqca.kernels import (
    HAVE_NUMBA,
    backend,
    convolve2d_mod,
    convolve_mod,
    select_backend,
)

SIZES_1D = (64, 256, 1024, 4096, 16384)
SIZES_2D = (16, 32, 64, 128)


def best_time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = perf_counter()
        fn()
        best = min(best, perf_counter() - start)
    return best


def bench_convolutions(p, repeats, rng):
    rows = []
    for n in SIZES_1D:
        a = np.array([rng.randrange(p) for _ in range(n)], dtype=np.int64)
        b = np.array([rng.randrange(p) for _ in range(n)], dtype=np.int64)
        rows.append(("conv1d", n, a, b, convolve_mod))
    for n in SIZES_2D:
        a = np.array([[rng.randrange(p) for _ in range(n)] for _ in range(n)], dtype=np.int64)
        b = np.array([[rng.randrange(p) for _ in range(n)] for _ in range(n)], dtype=np.int64)
        rows.append(("conv2d", n, a, b, convolve2d_mod))

    print(f"{'kernel':<8} {'size':>6} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for kind, n, a, b, fn in rows:
        select_backend("numpy")
        reference = fn(a, b, p)
        t_numpy = best_time(lambda: fn(a, b, p), repeats)
        if HAVE_NUMBA:
            select_backend("numba")
            fn(a, b, p)  # warm the jit cache before timing
            assert np.array_equal(fn(a, b, p), reference)
            t_numba = best_time(lambda: fn(a, b, p), repeats)
            ratio = t_numpy / t_numba if t_numba > 0 else float("inf")
            print(
                f"{kind:<8} {n:>6} {t_numpy * 1e3:>10.3f} {t_numba * 1e3:>10.3f} {ratio:>7.1f}x"
            )
        else:
            print(f"{kind:<8} {n:>6} {t_numpy * 1e3:>10.3f} {'-':>10} {'-':>8}")


def bench_orbit(p, steps, repeats):
    """Time a long automaton orbit end to end under each backend."""
    # A shear-local product spreads by three cells per step, so the orbit
    # support grows into the range where the dense kernels take over.
    s = shear_g(p, 3, 1) @ local_f(p, 1) @ shear_g(p, 1, 1)
    xi0 = PhaseVector.e_plus(p)

    def run():
        xi = xi0
        for _ in range(steps):
            xi = s.apply(xi)
        return xi

    select_backend("numpy")
    reference = run()
    t_numpy = best_time(run, repeats)
    line = f"orbit    {steps:>6} {t_numpy * 1e3:>10.3f}"
    if HAVE_NUMBA:
        select_backend("numba")
        assert run() == reference
        t_numba = best_time(run, repeats)
        ratio = t_numpy / t_numba if t_numba > 0 else float("inf")
        line += f" {t_numba * 1e3:>10.3f} {ratio:>7.1f}x"
    else:
        line += f" {'-':>10} {'-':>8}"
    print(line)
    size = len(reference.plus.terms) + len(reference.minus.terms)
    print(f"final support holds {size} nonzero coefficients, radius {s.radius()}")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p", type=int, default=3, help="prime modulus")
    parser.add_argument("--repeats", type=int, default=5, help="best-of-N timing")
    parser.add_argument("--steps", type=int, default=60, help="orbit length")
    parser.add_argument("--seed", type=int, default=99)
    args = parser.parse_args(argv)

    print(f"active backend at import: {backend()} (numba available: {HAVE_NUMBA})")
    rng = random.Random(args.seed)
    bench_convolutions(args.p, args.repeats, rng)
    bench_orbit(args.p, args.steps, args.repeats)


if __name__ == "__main__":
    main()
