"""Compare the compiled loop kernels against the vectorized numpy versions.

    python benchmarks/bench_kernels.py [--sizes 1,2001,1000000] [--repeat R]

Sizes cover the solver's single-point refinement calls, its default scan
grid and a long sweep.

The numba column is skipped when numba is not installed or when
FUZZY_RELEASE_NO_NUMBA=1 is set.
"""
import argparse
import time

import numpy as np

from fuzzy_release import _kernels
from fuzzy_release._accel import USE_NUMBA

PARAMS = (143.32, 0.1246, 50.0, 60.0, 700.0, 3600.0, 0.95, 0.1, 0.5, 450.0,
          1.0, 26000.0, 31000.0, 0.95, 0.80)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="1,2001,1000000")
    ap.add_argument("--repeat", type=int, default=7)
    args = ap.parse_args()

    cases = []
    for n in map(int, args.sizes.split(",")):
        T = np.linspace(0.0, 100.0, n)
        cases.append((f"release_curves n={n}",
                      lambda T=T: _kernels._release_curves_numpy(T, *PARAMS),
                      lambda T=T: _kernels._release_curves_loop(T, *PARAMS)))
    times = np.sort(np.random.default_rng(0).uniform(0, 60, 2000))
    cases.append(("nhpp_loglik n=2000",
                  lambda: _kernels._nhpp_loglik_numpy(times, 60.0, 2150.0, 0.12),
                  lambda: _kernels._nhpp_loglik_loop(times, 60.0, 2150.0, 0.12)))

    print(f"repeat={args.repeat} numba={'on' if USE_NUMBA else 'off'}")
    print(f"{'kernel':<28}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for name, np_fn, nb_fn in cases:
        t_np = best_of(np_fn, args.repeat)
        if USE_NUMBA:
            t0 = time.perf_counter()
            nb_fn()  # compile (or load from cache)
            warm = time.perf_counter() - t0
            t_nb = best_of(nb_fn, args.repeat)
            print(f"{name:<28}{t_np * 1e3:12.3f}{t_nb * 1e3:12.3f}{t_np / t_nb:10.2f}"
                  f"   (first call {warm * 1e3:.0f} ms)")
        else:
            print(f"{name:<28}{t_np * 1e3:12.3f}{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()
