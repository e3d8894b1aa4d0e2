# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: NTT convolution mod M, lattice counting for the A_{m-1}
form, and the twisted divisor sieve.  ``_fallback`` mirrors this API in numpy."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint32_t, uint64_t
from libc.stdlib cimport malloc, free
from libc.math cimport sqrt

cnp.import_array()

# (prime, primitive root); each supports transforms up to 2^23 or more
NTT_PRIMES = ((998244353, 3), (167772161, 3), (469762049, 3))

cdef uint64_t _powmod(uint64_t b, uint64_t e, uint64_t m) noexcept nogil:
    cdef uint64_t r = 1
    b %= m
    while e:
        if e & 1:
            r = r * b % m
        b = b * b % m
        e >>= 1
    return r


cdef inline uint64_t _redc(uint64_t t, uint64_t p, uint32_t pneg) noexcept nogil:
    # Montgomery reduction with R = 2^32: returns t / R mod p for t < p * 2^32
    cdef uint32_t m = (<uint32_t>t) * pneg
    cdef uint64_t u = (t + <uint64_t>m * p) >> 32
    return u - (p & (0 - <uint64_t>(u >= p)))


cdef uint32_t _neg_inverse(uint64_t p) noexcept nogil:
    cdef uint32_t inv = <uint32_t>p
    cdef int i
    for i in range(5):
        inv = inv * (2 - <uint32_t>p * inv)
    return <uint32_t>(0 - inv)


cdef void _ntt(uint64_t* a, Py_ssize_t n, uint64_t p, uint64_t g, bint inv,
               uint64_t* tw) noexcept nogil:
    # a holds Montgomery residues; tw is scratch of length n/2
    cdef Py_ssize_t i, j, k, bit, length, half
    cdef uint64_t w, u, v, t, r2
    cdef uint32_t pneg = _neg_inverse(p)
    r2 = (<uint64_t>1 << 32) % p
    r2 = r2 * r2 % p
    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j ^= bit
        if i < j:
            u = a[i]; a[i] = a[j]; a[j] = u
    length = 2
    while length <= n:
        half = length >> 1
        w = _powmod(g, (p - 1) // length, p)
        if inv:
            w = _powmod(w, p - 2, p)
        w = _redc(w * r2, p, pneg)
        tw[0] = _redc(r2, p, pneg)
        for k in range(1, half):
            tw[k] = _redc(tw[k - 1] * w, p, pneg)
        i = 0
        while i < n:
            for k in range(half):
                u = a[i + k]
                v = _redc(a[i + k + half] * tw[k], p, pneg)
                # branchless add/sub mod p
                t = u + v
                a[i + k] = t - (p & (0 - <uint64_t>(t >= p)))
                t = u + p - v
                a[i + k + half] = t - (p & (0 - <uint64_t>(t >= p)))
            i += length
        length <<= 1


cdef void _conv_prime(const int64_t* a, Py_ssize_t la, const int64_t* b, Py_ssize_t lb,
                      Py_ssize_t size, uint64_t p, uint64_t g, uint64_t* out,
                      uint64_t* buf, uint64_t* tw) noexcept nogil:
    cdef Py_ssize_t i
    cdef uint32_t pneg = _neg_inverse(p)
    cdef uint64_t r2 = (<uint64_t>1 << 32) % p
    cdef uint64_t scale
    r2 = r2 * r2 % p
    for i in range(size):
        out[i] = 0
        buf[i] = 0
    for i in range(la):
        out[i] = _redc((<uint64_t>a[i] % p) * r2, p, pneg)
    for i in range(lb):
        buf[i] = _redc((<uint64_t>b[i] % p) * r2, p, pneg)
    _ntt(out, size, p, g, 0, tw)
    _ntt(buf, size, p, g, 0, tw)
    for i in range(size):
        out[i] = _redc(out[i] * buf[i], p, pneg)
    _ntt(out, size, p, g, 1, tw)
    # leave Montgomery form and divide by the transform length in one step
    scale = _powmod(size, p - 2, p)
    for i in range(size):
        out[i] = _redc(out[i] * scale, p, pneg)


def convolve_mod(const cnp.int64_t[::1] a, const cnp.int64_t[::1] b, Py_ssize_t n_out, int64_t modulus):
    """First ``n_out`` coefficients of a*b mod ``modulus``; inputs must lie in [0, modulus)."""
    cdef Py_ssize_t la = min(a.shape[0], n_out)
    cdef Py_ssize_t lb = min(b.shape[0], n_out)
    result = np.zeros(n_out, dtype=np.int64)
    if la == 0 or lb == 0 or n_out == 0:
        return result
    cdef cnp.int64_t[::1] res = result
    cdef Py_ssize_t size = 1
    while size < la + lb - 1:
        size <<= 1
    bound = (int(modulus) - 1) ** 2 * int(min(la, lb))
    cdef int nprimes = 1
    prod = NTT_PRIMES[0][0]
    while bound >= prod:
        if nprimes == 3:
            raise ValueError("coefficient bound exceeds three-prime CRT range")
        prod *= NTT_PRIMES[nprimes][0]
        nprimes += 1
    if size > (1 << 23):
        raise ValueError("transform length exceeds 2^23")
    cdef uint64_t p1 = NTT_PRIMES[0][0], p2 = NTT_PRIMES[1][0], p3 = NTT_PRIMES[2][0]
    cdef uint64_t M = modulus
    cdef uint64_t* r1 = <uint64_t*>malloc(size * sizeof(uint64_t))
    cdef uint64_t* r2 = NULL
    cdef uint64_t* r3 = NULL
    cdef uint64_t* buf = <uint64_t*>malloc(size * sizeof(uint64_t))
    cdef uint64_t* tw = <uint64_t*>malloc((size // 2 + 1) * sizeof(uint64_t))
    cdef Py_ssize_t i
    cdef uint64_t x1, x2, t2, t3, inv12, inv13, inv23, m1, m12
    cdef const int64_t* pa = <const int64_t*>&a[0]
    cdef const int64_t* pb = <const int64_t*>&b[0]
    try:
        if nprimes >= 2:
            r2 = <uint64_t*>malloc(size * sizeof(uint64_t))
        if nprimes == 3:
            r3 = <uint64_t*>malloc(size * sizeof(uint64_t))
        with nogil:
            _conv_prime(pa, la, pb, lb, size, p1, 3, r1, buf, tw)
            if nprimes >= 2:
                _conv_prime(pa, la, pb, lb, size, p2, 3, r2, buf, tw)
            if nprimes == 3:
                _conv_prime(pa, la, pb, lb, size, p3, 3, r3, buf, tw)
            if nprimes == 1:
                for i in range(n_out if n_out < la + lb - 1 else la + lb - 1):
                    res[i] = r1[i] % M
            else:
                inv12 = _powmod(p1 % p2, p2 - 2, p2)
                m1 = p1 % M
                if nprimes == 2:
                    for i in range(n_out if n_out < la + lb - 1 else la + lb - 1):
                        t2 = (r2[i] + p2 - r1[i] % p2) % p2 * inv12 % p2
                        res[i] = (r1[i] % M + m1 * (t2 % M)) % M
                else:
                    inv13 = _powmod(p1 % p3, p3 - 2, p3)
                    inv23 = _powmod(p2 % p3, p3 - 2, p3)
                    m12 = (p1 % M) * (p2 % M) % M
                    for i in range(n_out if n_out < la + lb - 1 else la + lb - 1):
                        t2 = (r2[i] + p2 - r1[i] % p2) % p2 * inv12 % p2
                        # x12 = r1 + p1*t2 < p1*p2; reduce into p3 directly
                        x1 = (r1[i] % p3 + (p1 % p3) * (t2 % p3)) % p3
                        t3 = (r3[i] + p3 - x1) % p3 * inv13 % p3 * inv23 % p3
                        res[i] = (r1[i] % M + m1 * (t2 % M) + m12 * (t3 % M)) % M
    finally:
        free(r1); free(buf); free(tw)
        if r2 != NULL:
            free(r2)
        if r3 != NULL:
            free(r3)
    return result


cdef inline int64_t _isqrt(int64_t v) noexcept nogil:
    if v <= 0:
        return 0
    cdef int64_t r = <int64_t>sqrt(<double>v)
    while r * r > v:
        r -= 1
    while (r + 1) * (r + 1) <= v:
        r += 1
    return r


cdef inline void _bounds(int64_t s, int64_t nrm, int64_t rem, int64_t nmax,
                         int64_t* lo, int64_t* hi) noexcept nogil:
    # x admissible only if (rem+2)x^2 + 2sx + (rem+1)nrm + s^2 - 2n(rem+1) <= 0,
    # the minimum of Q over the rem coordinates still free
    cdef int64_t A = rem + 2
    cdef int64_t C = (rem + 1) * nrm + s * s - 2 * nmax * (rem + 1)
    cdef int64_t disc = s * s - A * C
    cdef int64_t root
    if disc < 0:
        lo[0] = 1
        hi[0] = 0
        return
    root = _isqrt(disc) + 1
    # floor/ceil with possibly negative numerators
    lo[0] = -((s + root) // A) - 1
    hi[0] = (root - s) // A + 1


def form_histogram(int m, int64_t nmax, int64_t x1_lo=-(1 << 40), int64_t x1_hi=(1 << 40)):
    """counts[n] = #{x in Z^{m-1} : Q(x) = n} for n <= nmax, first coordinate clipped to [x1_lo, x1_hi]."""
    cdef int k = m - 1
    if k < 1 or k > 15:
        raise ValueError("form arity must be between 1 and 15")
    hist_arr = np.zeros(nmax + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] hist = hist_arr
    cdef int64_t x[16]
    cdef int64_t lo[16]
    cdef int64_t hi[16]
    cdef int64_t S[17]
    cdef int64_t NN[17]
    cdef int d = 0
    cdef int64_t xv, s, q2, lim = 2 * nmax
    with nogil:
        S[0] = 0
        NN[0] = 0
        _bounds(0, 0, k - 1, nmax, &lo[0], &hi[0])
        if lo[0] < x1_lo:
            lo[0] = x1_lo
        if hi[0] > x1_hi:
            hi[0] = x1_hi
        x[0] = lo[0]
        while d >= 0:
            if x[d] > hi[d]:
                d -= 1
                if d >= 0:
                    x[d] += 1
                continue
            if d == k - 1:
                for xv in range(x[d], hi[d] + 1):
                    s = S[d] + xv
                    q2 = s * s + NN[d] + xv * xv
                    if q2 <= lim:
                        hist[q2 >> 1] += 1
                x[d] = hi[d] + 1
                continue
            S[d + 1] = S[d] + x[d]
            NN[d + 1] = NN[d] + x[d] * x[d]
            d += 1
            _bounds(S[d], NN[d], k - 1 - d, nmax, &lo[d], &hi[d])
            x[d] = lo[d]
    return hist_arr


def form_count(int m, int64_t n):
    """#{x in Z^{m-1} : Q(x) = n}, solving the last coordinate as a quadratic."""
    cdef int k = m - 1
    if k < 1 or k > 15:
        raise ValueError("form arity must be between 1 and 15")
    cdef int64_t x[16]
    cdef int64_t lo[16]
    cdef int64_t hi[16]
    cdef int64_t S[17]
    cdef int64_t NN[17]
    cdef int d = 0
    cdef int64_t disc, r, total = 0
    with nogil:
        S[0] = 0
        NN[0] = 0
        if k == 1:
            d = -1
            disc = 4 * n
            r = _isqrt(disc)
            if r * r == disc and (r % 2 == 0):
                total = 1 if r == 0 else 2
        else:
            _bounds(0, 0, k - 1, n, &lo[0], &hi[0])
            x[0] = lo[0]
        while d >= 0:
            if x[d] > hi[d]:
                d -= 1
                if d >= 0:
                    x[d] += 1
                continue
            S[d + 1] = S[d] + x[d]
            NN[d + 1] = NN[d] + x[d] * x[d]
            if d == k - 2:
                # last coordinate y: 2y^2 + 2sy + s^2 + N - 2n = 0
                disc = 4 * n - 2 * NN[d + 1] - S[d + 1] * S[d + 1]
                if disc >= 0:
                    r = _isqrt(disc)
                    if r * r == disc and ((r - S[d + 1]) & 1) == 0:
                        total += 1 if r == 0 else 2
                x[d] += 1
                continue
            d += 1
            _bounds(S[d], NN[d], k - 1 - d, n, &lo[d], &hi[d])
            x[d] = lo[d]
    return int(total)


def twisted_divisor_sums(Py_ssize_t nmax, int64_t kexp, const cnp.int64_t[::1] psi,
                         const cnp.int64_t[::1] phi, int64_t modulus=0):
    """out[n] = sum_{d | n} psi[n/d] phi[d] d^kexp for 1 <= n <= nmax; out[0] = 0.

    With ``modulus`` 0 the sums are exact in int64 (caller guarantees the range).
    """
    out_arr = np.zeros(nmax + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] out = out_arr
    cdef Py_ssize_t d, j, lim
    cdef int64_t w, pv
    cdef uint64_t M = modulus
    with nogil:
        for d in range(1, nmax + 1):
            if phi[d] == 0:
                continue
            if modulus:
                w = <int64_t>(_powmod(d, kexp, M))
                w = (w * ((phi[d] % modulus + modulus) % modulus)) % modulus
            else:
                w = phi[d]
                for j in range(kexp):
                    w *= d
            lim = nmax // d
            for j in range(1, lim + 1):
                pv = psi[j]
                if pv == 0:
                    continue
                if modulus:
                    out[d * j] = (out[d * j] + (pv % modulus + modulus) % modulus * w) % modulus
                else:
                    out[d * j] += pv * w
    return out_arr
