"""Pure numpy versions of the compiled kernels (same signatures as ``_native``)."""

from math import isqrt

import numpy as np

NTT_PRIMES = ((998244353, 3), (167772161, 3), (469762049, 3))

_bitrev_cache = {}


def _bitrev(n):
    perm = _bitrev_cache.get(n)
    if perm is None:
        bits = n.bit_length() - 1
        perm = np.zeros(n, dtype=np.int64)
        idx = np.arange(n, dtype=np.int64)
        for b in range(bits):
            perm |= ((idx >> b) & 1) << (bits - 1 - b)
        _bitrev_cache[n] = perm
    return perm


def _ntt(a, p, g, inverse=False):
    n = a.shape[0]
    a = a[_bitrev(n)]
    length = 2
    while length <= n:
        half = length // 2
        w = pow(g, (p - 1) // length, p)
        if inverse:
            w = pow(w, p - 2, p)
        tw = np.empty(half, dtype=np.int64)
        tw[0] = 1
        # powers by doubling keeps this vectorized
        filled = 1
        while filled < half:
            step = pow(w, filled, p)
            take = min(filled, half - filled)
            tw[filled:filled + take] = tw[:take] * step % p
            filled += take
        blocks = a.reshape(-1, length)
        u = blocks[:, :half].copy()
        v = blocks[:, half:] * tw % p
        blocks[:, :half] = (u + v) % p
        blocks[:, half:] = (u - v) % p
        length *= 2
    if inverse:
        a = a * pow(n, p - 2, p) % p
    return a


def convolve_mod(a, b, n_out, modulus):
    a = np.asarray(a, dtype=np.int64)[:n_out]
    b = np.asarray(b, dtype=np.int64)[:n_out]
    result = np.zeros(n_out, dtype=np.int64)
    la, lb = a.shape[0], b.shape[0]
    if la == 0 or lb == 0 or n_out == 0:
        return result
    size = 1
    while size < la + lb - 1:
        size *= 2
    if size > (1 << 23):
        raise ValueError("transform length exceeds 2^23")
    bound = (modulus - 1) ** 2 * min(la, lb)
    nprimes, prod = 1, NTT_PRIMES[0][0]
    while bound >= prod:
        if nprimes == 3:
            raise ValueError("coefficient bound exceeds three-prime CRT range")
        prod *= NTT_PRIMES[nprimes][0]
        nprimes += 1
    residues = []
    for p, g in NTT_PRIMES[:nprimes]:
        fa = np.zeros(size, dtype=np.int64)
        fb = np.zeros(size, dtype=np.int64)
        fa[:la] = a % p
        fb[:lb] = b % p
        fa = _ntt(fa, p, g)
        fb = _ntt(fb, p, g)
        residues.append(_ntt(fa * fb % p, p, g, inverse=True))
    m = min(n_out, la + lb - 1)
    M = modulus
    r1 = residues[0][:m]
    if nprimes == 1:
        result[:m] = r1 % M
        return result
    p1, p2, p3 = (q for q, _ in NTT_PRIMES)
    r2 = residues[1][:m]
    t2 = (r2 - r1 % p2) % p2 * pow(p1, p2 - 2, p2) % p2
    acc = (r1 % M + (p1 % M) * (t2 % M)) % M
    if nprimes == 3:
        r3 = residues[2][:m]
        x1 = (r1 % p3 + (p1 % p3) * (t2 % p3)) % p3
        inv = pow(p1 * p2 % p3, p3 - 2, p3)
        t3 = (r3 - x1) % p3 * inv % p3
        acc = (acc + (p1 % M) * (p2 % M) % M * (t3 % M)) % M
    result[:m] = acc
    return result


def _interval(s, nrm, rem, nmax):
    A = rem + 2
    C = (rem + 1) * nrm + s * s - 2 * nmax * (rem + 1)
    disc = s * s - A * C
    if disc < 0:
        return 1, 0
    root = isqrt(disc) + 1
    return (-s - root) // A - 1, (root - s) // A + 1


def form_histogram(m, nmax, x1_lo=-(1 << 40), x1_hi=1 << 40):
    k = m - 1
    if k < 1 or k > 15:
        raise ValueError("form arity must be between 1 and 15")
    hist = np.zeros(nmax + 1, dtype=np.int64)
    lim = 2 * nmax

    def last_two(s, nrm):
        # vectorize the final two coordinates over a grid
        lo, hi = _interval(s, nrm, 1, nmax)
        if lo > hi:
            return
        x = np.arange(lo, hi + 1, dtype=np.int64)
        y_lo, y_hi = 0, -1
        for xv in range(lo, hi + 1):
            a, b = _interval(s + xv, nrm + xv * xv, 0, nmax)
            if a <= b:
                y_lo, y_hi = (a, b) if y_lo > y_hi else (min(y_lo, a), max(y_hi, b))
        if y_lo > y_hi:
            return
        y = np.arange(y_lo, y_hi + 1, dtype=np.int64)
        X, Y = np.meshgrid(x, y, indexing="ij")
        tot = s + X + Y
        q2 = tot * tot + nrm + X * X + Y * Y
        sel = q2[q2 <= lim]
        np.add.at(hist, sel >> 1, 1)

    def rec(depth, s, nrm, lo_clip, hi_clip):
        rem = k - 1 - depth
        if rem == 1:
            if depth == 0:
                # only two coordinates in total; the clip applies to the first
                lo, hi = _interval(0, 0, 1, nmax)
                lo, hi = max(lo, lo_clip), min(hi, hi_clip)
                for x in range(lo, hi + 1):
                    y_lo, y_hi = _interval(x, x * x, 0, nmax)
                    y = np.arange(y_lo, y_hi + 1, dtype=np.int64)
                    q2 = (x + y) ** 2 + x * x + y * y
                    np.add.at(hist, q2[q2 <= lim] >> 1, 1)
                return
            last_two(s, nrm)
            return
        lo, hi = _interval(s, nrm, rem, nmax)
        lo, hi = max(lo, lo_clip), min(hi, hi_clip)
        for x in range(lo, hi + 1):
            rec(depth + 1, s + x, nrm + x * x, -(1 << 40), 1 << 40)

    if k == 1:
        lo, hi = _interval(0, 0, 0, nmax)
        lo, hi = max(lo, x1_lo), min(hi, x1_hi)
        x = np.arange(lo, hi + 1, dtype=np.int64)
        q2 = 2 * x * x
        np.add.at(hist, q2[q2 <= lim] >> 1, 1)
        return hist
    rec(0, 0, 0, x1_lo, x1_hi)
    return hist


def form_count(m, n):
    k = m - 1
    if k < 1 or k > 15:
        raise ValueError("form arity must be between 1 and 15")
    if k == 1:
        r = isqrt(4 * n)
        return (1 if r == 0 else 2) if r * r == 4 * n and r % 2 == 0 else 0

    total = 0

    def rec(depth, s, nrm):
        nonlocal total
        rem = k - 1 - depth
        lo, hi = _interval(s, nrm, rem, n)
        if lo > hi:
            return
        if rem == 1:
            x = np.arange(lo, hi + 1, dtype=np.int64)
            S = s + x
            N = nrm + x * x
            disc = 4 * n - 2 * N - S * S
            ok = disc >= 0
            disc, S = disc[ok], S[ok]
            r = np.floor(np.sqrt(disc.astype(np.float64))).astype(np.int64)
            r += ((r + 1) * (r + 1) <= disc).astype(np.int64)
            r -= (r * r > disc).astype(np.int64)
            hit = (r * r == disc) & (((r - S) & 1) == 0)
            total += int(np.where(r[hit] == 0, 1, 2).sum())
            return
        for x in range(lo, hi + 1):
            rec(depth + 1, s + x, nrm + x * x)

    rec(0, 0, 0)
    return int(total)


def twisted_divisor_sums(nmax, kexp, psi, phi, modulus=0):
    psi = np.asarray(psi, dtype=np.int64)
    phi = np.asarray(phi, dtype=np.int64)
    out = np.zeros(nmax + 1, dtype=np.int64)
    if modulus:
        psi = psi % modulus
    for d in range(1, nmax + 1):
        if phi[d] == 0:
            continue
        lim = nmax // d
        if modulus:
            w = pow(d, kexp, modulus) * int(phi[d] % modulus) % modulus
            out[d::d][:lim] = (out[d::d][:lim] + psi[1:lim + 1] * w) % modulus
        else:
            w = int(phi[d]) * d ** kexp
            out[d::d][:lim] += psi[1:lim + 1] * w
    return out
