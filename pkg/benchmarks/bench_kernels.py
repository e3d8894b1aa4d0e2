"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

Prints one CSV row per (kernel, size, backend) and the native speedup.
"""

import argparse
import time

import numpy as np

from etalift import kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(quick):
    rng = np.random.default_rng(0)
    sizes = [1 << 10, 1 << 14] if quick else [1 << 10, 1 << 14, 1 << 18, 1 << 20]
    for n in sizes:
        M = 13
        a = rng.integers(0, M, n)
        b = rng.integers(0, M, n)
        yield "convolve_mod_13", n, lambda impl, a=a, b=b, n=n: kernels.convolve_mod(a, b, n, M, impl)
        P = 998244353
        a2 = rng.integers(0, P, n)
        b2 = rng.integers(0, P, n)
        yield "convolve_mod_p30", n, lambda impl, a=a2, b=b2, n=n: kernels.convolve_mod(a, b, n, P, impl)
    for nmax in ([200] if quick else [200, 1000]):
        yield "form_histogram_m5", nmax, lambda impl, nmax=nmax: kernels.form_histogram(5, nmax, impl, 1)
    n = 10 ** 4 if quick else 10 ** 5
    psi = np.ones(n + 1, dtype=np.int64)
    phi = np.array([0, 1, -1, -1, 1] * (n // 5 + 1), dtype=np.int64)[: n + 1]
    yield "twisted_divisor_sums", n, lambda impl: kernels.twisted_divisor_sums(n, 1, psi, phi, 13, impl)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args(argv)
    try:
        native = kernels.backend("native")
    except RuntimeError:
        native = None
    fallback = kernels.backend("numpy")
    print("kernel,size,native_s,numpy_s,speedup,agree")
    for name, size, fn in cases(args.quick):
        t_np = best_of(lambda: fn(fallback), args.repeat)
        if native is None:
            print(f"{name},{size},,{t_np:.4f},,")
            continue
        t_nat = best_of(lambda: fn(native), args.repeat)
        agree = np.array_equal(fn(native), fn(fallback))
        print(f"{name},{size},{t_nat:.4f},{t_np:.4f},{t_np / t_nat:.1f}x,{agree}", flush=True)


if __name__ == "__main__":
    main()
