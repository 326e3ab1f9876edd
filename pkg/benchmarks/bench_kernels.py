"""Compare the pure-Python and compiled enumeration kernels.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

from zetaforge.algebra import field_make
from zetaforge.counting import count_Fq, padic_counts
from zetaforge.counting.kernels import available_backends
from zetaforge.varieties import parse_variety


def _variety(kind, dim, polys):
    return parse_variety({"name": "bench", "ambient": {"type": kind, "dim": dim}, "polys": polys})


CASES = [
    # (label, thunk taking backend)
    ("scan cubic surface F_31", lambda b: count_Fq(
        _variety("affine", 3, ["x0^3 + x1^3 + x2^3 + x0*x1*x2 - 1"]), field_make(31, 1),
        method="direct", backend=b)),
    ("scan plane cubic F_125", lambda b: count_Fq(
        _variety("projective", 2, ["x1^2*x2 - x0^3 - x0*x2^2 - x2^3"]), field_make(5, 3),
        method="direct", backend=b)),
    ("scan genus-2 curve F_3^6", lambda b: count_Fq(
        _variety("affine", 2, ["x1^2 + x0*x1 - x0^5 - 2*x0 - 1"]), field_make(3, 6),
        method="direct", backend=b)),
    ("lift node xy mod 3^9", lambda b: padic_counts(
        _variety("affine", 2, ["x0*x1"]), 3, 8, backend=b)),
    ("lift cusp mod 2^15", lambda b: padic_counts(
        _variety("affine", 2, ["x1^2 - x0^3"]), 2, 14, backend=b)),
]


def bench(fn, backend, repeat):
    best, value = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn(backend)
        best = min(best, time.perf_counter() - t0)
    return best, value


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = available_backends()
    print(f"{'case':28s}" + "".join(f"{b:>12s}" for b in backends) + "     speedup")
    for label, fn in CASES:
        times, values = [], []
        for b in backends:
            t, v = bench(fn, b, args.repeat)
            times.append(t)
            values.append(v)
        assert all(v == values[0] for v in values), f"backends disagree on {label}"
        speed = f"{times[0] / times[-1]:10.1f}x" if len(times) > 1 else ""
        print(f"{label:28s}" + "".join(f"{t:11.4f}s" for t in times) + speed)


if __name__ == "__main__":
    main()
