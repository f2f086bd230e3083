"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each case runs on both backends, checks they agree, and prints the best
wall time of N runs.
"""
import argparse
import time

from sharply import _pykernels
from sharply.gf import GF
from sharply.nearfield import dickson_table
from sharply.perm import mathieu11, symmetric

try:
    from sharply import _ckernels
except ImportError:
    _ckernels = None


def _flat(table):
    return [v for row in table for v in row]


def cases():
    m11 = [tuple(g) for g in mathieu11().generators]
    s7 = [tuple(g) for g in symmetric(7).generators]
    F = GF(49)
    add, mul = _flat(F.add_table), _flat(dickson_table(F))
    return [
        ("closure M11 (7920)", lambda k: len(k.closure(m11, 10_000))),
        ("closure S7 (5040)", lambda k: len(k.closure(s7, 10_000))),
        ("4-tuple orbit M11", lambda k: k.tuple_orbit_size(m11, (0, 1, 2, 3))),
        ("assoc scan GF(49) add", lambda k: k.assoc_failure(add, 49)),
        ("right distributivity Dickson(49)", lambda k: k.right_dist_failure(add, mul, 49, 0)),
    ]


def best_of(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled extension not built; only the fallback is timed")
    print(f"{'case':36s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, run in cases():
        tp, rp = best_of(lambda: run(_pykernels), args.repeat)
        if _ckernels is None:
            print(f"{name:36s} {tp:10.4f} {'-':>10s} {'-':>8s}")
            continue
        tc, rc = best_of(lambda: run(_ckernels), args.repeat)
        if rp != rc:
            raise SystemExit(f"backends disagree on {name}: {rp!r} vs {rc!r}")
        print(f"{name:36s} {tp:10.4f} {tc:10.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
