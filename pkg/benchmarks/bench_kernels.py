"""Compare the compiled and numpy kernel backends on the histogram workloads.

    python benchmarks/bench_kernels.py [--decoder-grid 20] [--encoder-grid 100] [--repeat 3]
"""

import argparse
import time

import numpy as np

from privsig import _pykernels, kernels
from privsig.oracle import SAFETY_GRID, decoder_grid

try:
    from privsig import _ckernels
except ImportError:
    _ckernels = None

PRIOR = (0.3, 0.1, 0.2, 0.4)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def workloads(decoder_n, encoder_n):
    dec = decoder_grid(decoder_n)
    scan = kernels.square_grid(SAFETY_GRID)
    kap = kernels.square_grid(encoder_n)

    def encoder_sweep(impl):
        # same chunking as the histogram driver
        for s in range(0, len(dec), 20000):
            kernels.encoder_payoff_extrema(PRIOR, 1.0, dec[s:s + 20000], scan, impl=impl)

    def decoder_sweep(impl):
        return kernels.mutual_info_grid(PRIOR, kap, scan, impl=impl)

    return {
        f"encoder extrema ({len(dec)} x {len(scan)})": encoder_sweep,
        f"mutual info ({len(kap)} x {len(scan)})": decoder_sweep,
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--decoder-grid", type=int, default=20)
    ap.add_argument("--encoder-grid", type=int, default=100)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    impls = [("python", _pykernels)]
    if _ckernels is not None:
        impls.insert(0, ("cython", _ckernels))
    else:
        print("compiled extension not built; timing the numpy backend only")

    print(f"{'workload':<40} " + " ".join(f"{name:>10}" for name, _ in impls) + "   speedup")
    for label, fn in workloads(args.decoder_grid, args.encoder_grid).items():
        times = [best_of(lambda: fn(impl), args.repeat)[0] for _, impl in impls]
        speed = f"{times[-1] / times[0]:8.2f}x" if len(times) == 2 else ""
        print(f"{label:<40} " + " ".join(f"{t:9.3f}s" for t in times) + f"  {speed}")

    if _ckernels is not None:
        dec = decoder_grid(4)
        scan = kernels.square_grid(SAFETY_GRID)
        a = kernels.encoder_payoffs(PRIOR, 1.0, dec, scan, impl=_ckernels)
        b = kernels.encoder_payoffs(PRIOR, 1.0, dec, scan, impl=_pykernels)
        print(f"max |cython - python| on a grid-4 sweep: {np.abs(a - b).max():.2e}")


if __name__ == "__main__":
    main()
