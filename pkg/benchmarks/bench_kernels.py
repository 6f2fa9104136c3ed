"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time

from sumreg import _backend
from sumreg.debruijn import default_utable
from sumreg.fsr import FeedbackSpec
from sumreg.omega import _index_bits


def traverse(k):
    f = FeedbackSpec.csr(18)
    return lambda: k.traverse(18, f.g_table)


def generate(k):
    u = default_utable(16).kernel_list()
    return lambda: k.debruijn(16, u, (1 << 15) - 1)


def omega_exhaustive(k):
    def run():
        for i in range(1 << 16):
            k.omega_violation(5, _index_bits(i, 16))
    return run


def omega_symmetric(k):
    def run():
        for n in range(6, 15):
            for i in range(1 << n):
                k.omega_violation_symmetric(n, _index_bits(i, n))
    return run


CASES = [
    ("traverse CSR_18", traverse),
    ("de Bruijn n=16", generate),
    ("exhaustive search n=5", omega_exhaustive),
    ("symmetric search n=6..14", omega_symmetric),
]


def best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = [_backend.python_kernels]
    if _backend.compiled_kernels is None:
        print("compiled kernels unavailable; timing the Python fallback only")
    else:
        backends.append(_backend.compiled_kernels)
    header = f"{'case':<28}" + "".join(f"{k.NAME:>12}" for k in backends)
    print(header + ("     speedup" if len(backends) == 2 else ""))
    for name, make in CASES:
        times = [best(make(k), args.repeat) for k in backends]
        row = f"{name:<28}" + "".join(f"{t:>11.4f}s" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>11.0f}x"
        print(row)


if __name__ == "__main__":
    main()
