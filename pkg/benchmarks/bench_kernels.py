"""Timing comparison of the native and pure kernel backends.

Runs the three bulk kernels on representative workloads and prints one
table row per (kernel, workload, backend) with the native speedup.

Usage: python benchmarks/bench_kernels.py [--k 2] [--repeat 3]
"""

import argparse
import time

from fgw._kernels import pure

try:
    from fgw._kernels import _native as native
except ImportError:
    native = None


def _ball_keys(two_k, radius):
    keys = []
    for n in range(radius + 1):
        keys.extend(pure.sphere_keys(two_k, n))
    return keys


def _time(fn, repeat):
    best = None
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=2, help="free group rank")
    ap.add_argument("--repeat", type=int, default=3, help="timing repeats, best is kept")
    args = ap.parse_args()

    two_k = 2 * args.k
    ball4 = _ball_keys(two_k, 4)
    sphere6 = pure.sphere_keys(two_k, 6)
    half6 = sphere6[: len(sphere6) // 2]

    cases = [
        ("sphere_keys", "n=10", lambda mod: mod.sphere_keys(two_k, 10)),
        ("prod_len_hist", "S6/2 x S6/2", lambda mod: mod.prod_len_hist(two_k, half6, half6)),
        ("convolve_sphere_set", "S6 * B4", lambda mod: mod.convolve_sphere_set(two_k, 6, ball4)),
        ("sphere_len_hists", "S6 vs B4", lambda mod: mod.sphere_len_hists(two_k, 6, ball4)),
    ]

    print("%-20s %-12s %10s %10s %9s" % ("kernel", "workload", "pure_s", "native_s", "speedup"))
    for name, load, call in cases:
        t_pure, r_pure = _time(lambda: call(pure), args.repeat)
        if native is None:
            print("%-20s %-12s %10.4f %10s %9s" % (name, load, t_pure, "-", "-"))
            continue
        t_nat, r_nat = _time(lambda: call(native), args.repeat)
        assert r_pure == r_nat, "backend results differ on %s" % name
        print("%-20s %-12s %10.4f %10.4f %8.1fx" % (name, load, t_pure, t_nat, t_pure / t_nat))
    if native is None:
        print("native backend not built; showing pure timings only")


if __name__ == "__main__":
    main()
