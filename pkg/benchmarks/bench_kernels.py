"""Compare the compiled and pure-numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5] [--size 100000]

Prints one line per kernel with the best-of-N wall time for each backend,
the speed-up and the largest relative difference between their outputs.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from tricomi_lab import _kernels_py

try:
    from tricomi_lab import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def cases(size: int, rng: np.random.Generator):
    x_gamma = rng.uniform(1e-3, 50.0, size)
    z_j0 = rng.uniform(-30.0, 30.0, size)
    t = np.linspace(0.0, 1.0, size | 1)
    h = (1.0 + t) ** 2
    return {
        "gamma": (x_gamma,),
        "log_gamma": (x_gamma,),
        "j0": (z_j0,),
        "quad_moments": (t, h),
    }


def _flatten(out):
    if isinstance(out, tuple):
        return np.concatenate([np.ravel(o) for o in out])
    return np.ravel(out)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--size", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if _ckernels is None:
        print("compiled backend not available; build with `pip install -e . --no-build-isolation`")
        return 1
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<14}{'python [ms]':>13}{'cython [ms]':>13}{'speed-up':>10}{'max rel diff':>14}")
    for name, inputs in cases(args.size, rng).items():
        py_fn = getattr(_kernels_py, name)
        c_fn = getattr(_ckernels, name)
        t_py = min(timeit.repeat(lambda: py_fn(*inputs), number=1, repeat=args.repeat))
        t_c = min(timeit.repeat(lambda: c_fn(*inputs), number=1, repeat=args.repeat))
        a, b = _flatten(py_fn(*inputs)), _flatten(c_fn(*inputs))
        diff = float(np.max(np.abs(a - b) / np.maximum(1.0, np.abs(b))))
        print(f"{name:<14}{1e3 * t_py:>13.3f}{1e3 * t_c:>13.3f}{t_py / t_c:>10.1f}{diff:>14.2e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
