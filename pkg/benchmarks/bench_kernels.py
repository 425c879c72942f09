"""Compare the compiled and pure-Python eigen-kernels.

Usage::

    python3 benchmarks/bench_kernels.py [--repeat 5]

Times ``sqrt_psd_batch`` on random 4x4 density matrices for several batch
sizes, plus a 101x101 global-pure scan row set through each backend.
"""

import argparse
import timeit

import numpy as np

from mdi_asymmetry import _backend, scan
from mdi_asymmetry.presets import figure_specs
from mdi_asymmetry.verify import random_density


def _stack(n, seed=0):
    rng = np.random.default_rng(seed)
    return np.stack([random_density(rng, rank=int(rng.integers(1, 5))) for _ in range(n)])


def _best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    names = _backend.available_backends()
    print(f"available backends: {', '.join(names)} (default: {_backend.BACKEND})")
    kernels = {name: _backend.load_backend(name) for name in names}

    print(f"\n{'batch':>8}" + "".join(f"{n + ' [ms]':>16}" for n in names))
    for n in (1, 10, 100, 1000, 10000):
        a = _stack(n)
        row = [_best(lambda k=k: k.sqrt_psd_batch(a), args.repeat) * 1e3 for k in kernels.values()]
        print(f"{n:>8}" + "".join(f"{t:>16.3f}" for t in row))

    (_, spec), = figure_specs("fig3", grid=101, path="oracle")
    print(f"\nlocal-pure scan 101x101 (oracle path, 1 worker):")
    saved = _backend.kernels
    try:
        for name, k in kernels.items():
            _backend.kernels = k
            t = _best(lambda: scan.run_scan(spec, workers=1), max(1, args.repeat // 2))
            print(f"  {name:<8} {t:8.3f} s")
    finally:
        _backend.kernels = saved


if __name__ == "__main__":
    main()
