"""Time the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Inputs are the shapes the verifier actually uses: convolution powers of a
length-6 center up to degree 45, decay sums at n = 0, 2..224 and the
uniform sums at N = 224. Both backends must return identical arrays.
"""

import argparse
import timeit

import numpy as np

from ddeproof import _pykernels
from ddeproof.config import default_config_path, load_config
from ddeproof.estimates import PowerTable

try:
    from ddeproof import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def _inputs():
    c = load_config(default_config_path()).proof.c_hat
    table = PowerTable(c, 45)
    rows, sup = table.abs_rows, table.supports
    x = table.power(20).array.copy()
    y = table.power(21).array.copy()
    ns = [0] + list(range(2, 225))
    return {"conv_rect": (x, y), "decay_sums": (rows, sup, ns), "uniform_sums": (rows[:44], sup[:44], 224)}


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    data = _inputs()
    backends = [("python", _pykernels)]
    if _ckernels is not None:
        backends.append(("compiled", _ckernels))
    else:
        print("compiled extension not available; timing the fallback only")
    print(f"{'kernel':<14} {'backend':<9} {'best [ms]':>10} {'speedup':>8}")
    for name, fargs in data.items():
        ref = None
        base = None
        for label, mod in backends:
            fn = getattr(mod, name)
            out = fn(*fargs)
            if ref is None:
                ref = out
            elif not np.array_equal(ref, out):
                raise SystemExit(f"{name}: backends disagree")
            number = 1 if label == "python" else 20
            best = min(timeit.repeat(lambda: fn(*fargs), number=number, repeat=args.repeat)) / number
            base = base or best
            print(f"{name:<14} {label:<9} {best * 1e3:>10.3f} {base / best:>7.1f}x")


if __name__ == "__main__":
    main()
