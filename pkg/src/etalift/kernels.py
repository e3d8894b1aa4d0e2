"""Kernel backend selection.

The compiled ``_native`` extension is used when it imports; otherwise the numpy
versions in ``_fallback`` take over.  Set ``ETALIFT_PURE=1`` to force the
fallback (useful for benchmarking and for checking the two agree).
"""

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _fallback

_native = None
if not os.environ.get("ETALIFT_PURE"):
    try:
        from . import _native
    except ImportError:  # extension not built
        _native = None

_impl = _native if _native is not None else _fallback
BACKEND = "native" if _native is not None else "numpy"


def thread_count():
    """Worker cap from ETALIFT_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("ETALIFT_THREADS", "1")))
    except ValueError:
        return 1


def backend(name=None):
    if name is None:
        return _impl
    if name == "native":
        if _native is None:
            raise RuntimeError("compiled kernels are not available")
        return _native
    if name == "numpy":
        return _fallback
    raise ValueError(f"unknown backend {name!r}")


def convolve_mod(a, b, n_out, modulus, impl=None):
    a = np.ascontiguousarray(a, dtype=np.int64)
    b = np.ascontiguousarray(b, dtype=np.int64)
    return (impl or _impl).convolve_mod(a, b, int(n_out), int(modulus))


def form_histogram(m, nmax, impl=None, threads=None):
    impl = impl or _impl
    threads = threads or thread_count()
    if threads == 1 or m < 3:
        return impl.form_histogram(m, nmax)
    # split on the first coordinate; the compiled kernel releases the GIL
    bound = int((2 * nmax) ** 0.5) + 2
    edges = np.linspace(-bound, bound + 1, threads + 1).astype(int)
    ranges = [(int(lo), int(hi) - 1) for lo, hi in zip(edges[:-1], edges[1:])]
    with ThreadPoolExecutor(threads) as pool:
        parts = pool.map(lambda r: impl.form_histogram(m, nmax, r[0], r[1]), ranges)
        return sum(parts)


def form_count(m, n, impl=None):
    return int((impl or _impl).form_count(m, n))


def twisted_divisor_sums(nmax, kexp, psi, phi, modulus=0, impl=None):
    psi = np.ascontiguousarray(psi, dtype=np.int64)
    phi = np.ascontiguousarray(phi, dtype=np.int64)
    return (impl or _impl).twisted_divisor_sums(int(nmax), int(kexp), psi, phi, int(modulus))
