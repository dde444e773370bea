"""Benchmark: HBD work scaling of the (4+eps) algorithm and numba vs plain Python.

    python benchmarks/bench_scaling.py
    python benchmarks/bench_scaling.py --sizes 128,256,512 --repeat 5
    GIRTHKIT_DISABLE_NUMBA=1 python benchmarks/bench_scaling.py --skip-backends
"""
import argparse
import time

from girthkit._accel import NUMBA_ENABLED
from girthkit.bench import backend_comparison, fit_exponent, scaling_rows


def fmt(row):
    return " ".join(f"{k}={v}" for k, v in row)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sizes", default="128,256,512,1024")
    ap.add_argument("--p", type=float, default=0.5)
    ap.add_argument("--eps", type=float, default=0.5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--backend-n", type=int, default=256)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-backends", action="store_true")
    args = ap.parse_args()

    sizes = [int(x) for x in args.sizes.split(",")]
    print(f"numba enabled: {NUMBA_ENABLED}")
    t0 = time.perf_counter()
    rows = scaling_rows(sizes, seed=args.seed, eps=args.eps, p=args.p, timing=True)
    for row in rows:
        print(fmt(row))
    d = [dict(r) for r in rows]
    print(f"beta(hbd_visited) = {fit_exponent(sizes, [r['hbd_visited'] for r in d]):.3f}")
    print(f"beta(nearest_reads) = {fit_exponent(sizes, [r['nearest_reads'] for r in d]):.3f}")
    print(f"beta(m) = {fit_exponent(sizes, [r['m'] for r in d]):.3f}")
    print(f"scaling sweep: {time.perf_counter() - t0:.2f}s")

    if not args.skip_backends:
        print()
        for row in backend_comparison(args.backend_n, seed=args.seed, repeat=args.repeat):
            print(fmt(row))


if __name__ == "__main__":
    main()
