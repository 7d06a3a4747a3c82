"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Reports the median time per call of each kernel on a 100 x 100 grid and
one ordered packing run, plus the speed-up of the compiled backend.
"""
import argparse
import os
import statistics
import subprocess
import sys
import time

import numpy as np

from compact import _kernels_py
from compact.raster import ObjectSpec, Pose, layout_params, shape_params

try:
    from compact import _ckernels
except ImportError:
    _ckernels = None


def workload():
    rng = np.random.default_rng(0)
    specs, poses = [], []
    for k in range(20):
        if k % 3 == 0:
            specs.append(ObjectSpec.circle(k, int(rng.integers(5, 40))))
            poses.append(Pose(*rng.integers(20, 80, 2).tolist()))
        else:
            specs.append(ObjectSpec.rect(k, *rng.integers(5, 50, 2).tolist(), rotatable=True))
            poses.append(Pose(*rng.integers(1, 100, 2).tolist(), float(rng.integers(-6, 7) * 15)))
    return layout_params(specs, poses)


def bench(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def kernel_times(mod, repeat):
    params = workload()
    g = np.zeros((100, 100), np.int32)
    mod.paint(g, params)
    one = shape_params(ObjectSpec.rect("x", 20, 30, True), Pose(50, 20, 30))
    return {
        "paint (20 shapes)": bench(lambda: mod.paint(np.zeros((100, 100), np.int32), params),
                                   repeat),
        "overlap": bench(lambda: mod.overlap(g, one), repeat),
        "stats": bench(lambda: mod.stats(g), repeat),
        "a1": bench(lambda: mod.a1(g), repeat),
        "a1_gain": bench(lambda: mod.a1_gain(g, one), repeat),
    }


def pack_time(pure):
    code = ("import time; from compact.scenarios import get_scenario; "
            "from compact.strategies import pack; t=time.perf_counter(); "
            "pack(get_scenario('table4').with_(solver='ga'), 0); "
            "print(time.perf_counter()-t)")
    env = dict(os.environ, COMPACT_PURE_PYTHON="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True)
    return float(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=200)
    ap.add_argument("--no-pack", action="store_true", help="skip the end-to-end packing run")
    args = ap.parse_args()
    py = kernel_times(_kernels_py, args.repeat)
    cy = kernel_times(_ckernels, args.repeat) if _ckernels else None
    print(f"{'kernel':20s} {'python us':>10s} {'cython us':>10s} {'speed-up':>9s}")
    for k, t in py.items():
        if cy:
            print(f"{k:20s} {t * 1e6:10.1f} {cy[k] * 1e6:10.1f} {t / cy[k]:8.1f}x")
        else:
            print(f"{k:20s} {t * 1e6:10.1f} {'n/a':>10s}")
    if not args.no_pack:
        tp = pack_time(True)
        tc = pack_time(False) if _ckernels else float("nan")
        print(f"{'table4 ordered GA':20s} {tp:9.2f}s {tc:9.2f}s {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
