"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from umebmub import _kernels_py
from umebmub.bases import complete_basis
from umebmub.mub import build_second_basis, example_catalog

try:
    from umebmub import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def cases():
    spec = example_catalog("ex4")
    A, B = complete_basis(8).matrix(), build_second_basis(spec).matrix()
    rng = np.random.default_rng(0)
    V = rng.standard_normal((4096, 16)) + 1j * rng.standard_normal((4096, 16))
    return {
        "hadamard_masks(4)": lambda k: k.hadamard_masks(4),
        "overlap_max_deviation d=8": lambda k: k.overlap_max_deviation(A, B, 0.25),
        "gram_det_batch 4096 x d=8": lambda k: k.gram_det_batch(V, 8),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = [("python", _kernels_py)] + ([("cython", _kernels_c)] if _kernels_c else [])
    if _kernels_c is None:
        print("compiled extension not built; timing the fallback only")
    print(f"{'kernel':<30}" + "".join(f"{name:>14}" for name, _ in backends) + ("     speedup" if _kernels_c else ""))
    for label, fn in cases().items():
        times = []
        for _, k in backends:
            number = 1 if label.startswith("hadamard") else 50
            t = min(timeit.repeat(lambda: fn(k), number=number, repeat=args.repeat)) / number
            times.append(t)
        row = f"{label:<30}" + "".join(f"{t * 1e3:>12.3f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
