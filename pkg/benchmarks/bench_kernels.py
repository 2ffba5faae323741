"""Compare the numba kernels with the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]

Each kernel runs on a fixed workload drawn from the 5-point posets; an
end-to-end row times a pushforward suite run with each implementation.
Numba compilation happens in an untimed warm-up call.
"""
import argparse
import time

import numpy as np

from ttg import kernels
from ttg.explorer import (
    PUSHFORWARD_SURJECTIVE, InstanceFamily, _perms, default_suite, labeled_posets, run_family,
)


def workloads():
    spaces = labeled_posets(5)[::40]
    six = labeled_posets(4)[::10]
    rng = np.random.default_rng(0)
    jobs = {}
    jobs["downset_masks"] = [(np.asarray(s.below, dtype=np.int64),) for s in spaces]
    jobs["phi_theta"] = []
    for s in spaces:
        ds = s.downsets
        sig = rng.integers(0, 32, size=len(ds)).astype(np.int64)
        jobs["phi_theta"].append((ds, sig, ds.copy()))
    jobs["perm_codes"] = [(np.asarray(s.leq_matrix), _perms(5)) for s in spaces]
    jobs["monotone_maps"] = [(np.asarray(a.leq_matrix), np.asarray(b.leq_matrix), False, True)
                             for a in spaces[:10] for b in six[:6]]
    jobs["extension_pairs"] = []
    for s in spaces:
        downs = s.downsets
        ups = (s.full & ~downs[::-1]).astype(np.int64)
        jobs["extension_pairs"].append((downs, ups, np.asarray(s.above, dtype=np.int64),
                                        np.int64(s.full)))
    return jobs


def time_kernel(module, name, args_list, repeat):
    fn = getattr(module, name)
    fn(*args_list[0])  # warm-up / compile
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        for args in args_list:
            fn(*args)
        best = min(best, time.perf_counter() - t)
    return best


def end_to_end(module):
    saved = kernels.impl
    kernels.impl = module
    try:
        fam = InstanceFamily(3, kind=PUSHFORWARD_SURJECTIVE)
        run_family(InstanceFamily(2, kind=PUSHFORWARD_SURJECTIVE))  # warm-up
        t = time.perf_counter()
        run_family(fam, default_suite())
        return time.perf_counter() - t
    finally:
        kernels.impl = saved


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if kernels.numba_impl is None:
        raise SystemExit("numba is not importable; nothing to compare")
    print(f"{'kernel':<18} {'numpy (ms)':>12} {'numba (ms)':>12} {'speedup':>9}")
    for name, jobs in workloads().items():
        t_np = time_kernel(kernels.numpy_impl, name, jobs, args.repeat)
        t_nb = time_kernel(kernels.numba_impl, name, jobs, args.repeat)
        print(f"{name:<18} {t_np * 1e3:>12.2f} {t_nb * 1e3:>12.2f} {t_np / t_nb:>8.1f}x")
    t_np = end_to_end(kernels.numpy_impl)
    t_nb = end_to_end(kernels.numba_impl)
    print(f"{'suite |S|<=3':<18} {t_np * 1e3:>12.2f} {t_nb * 1e3:>12.2f} {t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
