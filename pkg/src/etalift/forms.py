"""Concrete forms: eta quotients, the A_{m-1} theta series r_m(n), twisted
Eisenstein series, the fitted closed form of A_5, powers of Delta mod l and the
generating series of colored Frobenius partitions."""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import kernels
from .arith import RealCharacter, is_prime
from .qseries import (FracSeries, ModSeries, euler_product, invert, power,
                      v_operator)

BRUTE_GUARD = 10 ** 5


# ---------------------------------------------------------------- eta quotients

@dataclass(frozen=True)
class EtaQuotient:
    """prod eta(delta z)^r over ``factors`` = ((delta, r), ...)."""

    factors: tuple

    def __post_init__(self):
        merged = {}
        for d, r in self.factors:
            if d < 1:
                raise ValueError("delta must be positive")
            merged[d] = merged.get(d, 0) + r
        object.__setattr__(self, "factors", tuple(sorted((d, r) for d, r in merged.items() if r)))

    @classmethod
    def parse(cls, text):
        """"1^2 2^2 3^2 6^2" -> eta(z)^2 eta(2z)^2 eta(3z)^2 eta(6z)^2."""
        out = []
        for tok in text.replace(",", " ").split():
            d, _, r = tok.partition("^")
            out.append((int(d), int(r) if r else 1))
        return cls(tuple(out))

    @property
    def weight(self):
        return Fraction(sum(r for _, r in self.factors), 2)

    @property
    def valuation24(self):
        return sum(d * r for d, r in self.factors)

    def __mul__(self, other):
        return EtaQuotient(self.factors + other.factors)

    def __str__(self):
        return " ".join(f"{d}^{r}" for d, r in self.factors)


@lru_cache(maxsize=64)
def _euler_power(r, P, modulus):
    """E(q)^r to P terms; exact when modulus is None."""
    if P < 1:
        raise ValueError("precision must be positive")
    E = euler_product(P, modulus)
    if r == 0:
        return E.one(P) if modulus is None else ModSeries.one(P, modulus)
    s = abs(r)
    if modulus is not None and is_prime(modulus) and s >= modulus:
        # E(q)^l = E(q^l) mod l: split s into base-l digits
        out, scale = None, 1
        while s:
            s, digit = divmod(s, modulus)
            if digit:
                n = -(-P // scale)
                part = v_operator(power(euler_product(n, modulus), digit), scale).truncate(P)
                out = part if out is None else out * part
            scale *= modulus
        pos = out
    else:
        pos = power(E, s)
    return pos if r > 0 else invert(pos)


def expand_eta_quotient(spec, P, modulus=None):
    """Expansion of an EtaQuotient to P terms (integer steps from the valuation)."""
    if isinstance(spec, str):
        spec = EtaQuotient.parse(spec)
    result = None
    for d, r in spec.factors:
        n = -(-P // d)
        part = v_operator(_euler_power(r, n, modulus), d).truncate(P)
        result = part if result is None else result * part
    if result is None:
        result = FracSeries.one(P) if modulus is None else ModSeries.one(P, modulus)
    v = spec.valuation24
    if v % 24 == 0:
        return result.shift(v // 24)
    return result.with_denom(24).shift(v)


def theta_series(P, modulus=None):
    """theta(z) = sum_{n in Z} q^{n^2}."""
    c = [0] * P
    n = 0
    while n * n < P:
        c[n * n] += 1 if n == 0 else 2
        n += 1
    if modulus is None:
        return FracSeries(c)
    return ModSeries(c, modulus)


# ---------------------------------------------------------------- r_m(n)

@dataclass(frozen=True)
class QuadFormCounter:
    """Q(x) = sum x_i^2 + sum_{i<j} x_i x_j on Z^{m-1}."""

    m: int
    arity: int = field(init=False)

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("m must be at least 2")
        object.__setattr__(self, "arity", self.m - 1)

    @staticmethod
    def value(x):
        s = sum(x)
        return (s * s + sum(t * t for t in x)) // 2

    def count(self, n):
        return rm_count(self.m, n)

    def counts(self, nmax):
        return rm_counts(self.m, nmax)


def rm_count(m, n):
    """#{x in Z^{m-1} : Q(x) = n} by enumeration."""
    if m < 2:
        raise ValueError("m must be at least 2")
    if n < 0:
        return 0
    if n > BRUTE_GUARD:
        raise ValueError(f"n = {n} exceeds the enumeration guard; use theta_series_fast")
    return kernels.form_count(m, n)


@lru_cache(maxsize=16)
def _rm_counts_cached(m, nmax):
    arr = kernels.form_histogram(m, nmax)
    arr.setflags(write=False)
    return arr


def rm_counts(m, nmax):
    """int64 array r_m(0..nmax) from the enumeration kernel."""
    if m < 2:
        raise ValueError("m must be at least 2")
    if nmax > BRUTE_GUARD:
        raise ValueError(f"nmax = {nmax} exceeds the enumeration guard; use theta_series_fast")
    return _rm_counts_cached(m, nmax)


def theta_series_fast(m, nmax):
    """r_m(0..nmax) through the lattice {y in Z^m : sum y = 0}.

    Vectors y with sum y = m*u split as y' + u(1,...,1) with sum y' = 0, so
    the theta series of {sum y = 0 mod m} equals Theta_A(x) * sum_u x^{m u^2}
    in x = q^{1/2}; Q(x) is half the squared norm of y' = (x, -sum x).
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    X = 2 * nmax
    lim = int(X ** 0.5) + 1
    squares = [(a, a * a) for a in range(-lim, lim + 1) if a * a <= X]
    # G[c] counts y in Z^j with sum y = c mod m, by squared norm
    G = [np.zeros(X + 1, dtype=np.int64) for _ in range(m)]
    for a, sq in squares:
        G[a % m][sq] += 1
    for _ in range(m - 1):
        new = [np.zeros(X + 1, dtype=np.int64) for _ in range(m)]
        for c1 in range(m):
            g = G[c1]
            if not g.any():
                continue
            for a, sq in squares:
                new[(c1 + a) % m][sq:] += g[: X + 1 - sq]
        G = new
    theta = G[0].copy()
    shifts = [m * u * u for u in range(1, lim + 1) if m * u * u <= X]
    for n in range(X + 1):
        acc = theta[n]
        for s in shifts:
            if s > n:
                break
            acc -= 2 * theta[n - s]
        theta[n] = acc
    return theta[::2].copy()


# ---------------------------------------------------------------- Eisenstein series

def eisenstein_series(k, psi, phi, P, modulus=None):
    """Coefficients sum_{d | n} psi(n/d) phi(d) d^{k-1} for n >= 1; constant term 0.

    The constant term is left at 0 so callers can fit it.
    """
    if k < 1:
        raise ValueError("weight must be positive")
    if psi(-1) * phi(-1) != (-1) ** k:
        raise ValueError("parity condition psi(-1) phi(-1) = (-1)^k fails")
    nmax = P - 1
    pv, fv = psi.values(nmax), phi.values(nmax)
    if modulus is not None:
        arr = kernels.twisted_divisor_sums(nmax, k - 1, pv, fv, modulus)
        return ModSeries(arr, modulus)
    # sigma_{k-1}(n) < n^{k-1} * 2 n covers the int64 range check
    if 2 * float(nmax) ** k < 2 ** 62:
        arr = kernels.twisted_divisor_sums(nmax, k - 1, pv, fv, 0)
        return FracSeries(arr.tolist())
    out = [0] * P
    for d in range(1, P):
        w = int(fv[d]) * d ** (k - 1)
        if w:
            for j in range(1, nmax // d + 1):
                if pv[j]:
                    out[d * j] += int(pv[j]) * w
    return FracSeries(out)


CHI5 = RealCharacter(5, 5)


@dataclass(frozen=True)
class FitReport:
    c0: Fraction
    c1: Fraction
    c2: Fraction
    n_fit: int
    n_validated: int

    def describe(self):
        return (f"r_5(n) = {self.c0}*[n=0] + {self.c1}*E2^(1,chi5) + {self.c2}*E2^(chi5,1); "
                f"fit on n<={self.n_fit}, validated on n<={self.n_validated}")


def _solve_fit(rows, rhs):
    """Exact solve of an overdetermined 2-unknown system; None if inconsistent."""
    base = None
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            a, b = rows[i], rows[j]
            det = a[0] * b[1] - a[1] * b[0]
            if det:
                base = (i, j, det)
                break
        if base:
            break
    if base is None:
        return None
    i, j, det = base
    a, b = rows[i], rows[j]
    x = Fraction(rhs[i] * b[1] - a[1] * rhs[j], det)
    y = Fraction(a[0] * rhs[j] - rhs[i] * b[0], det)
    for (p, q), r in zip(rows, rhs):
        if p * x + q * y != r:
            return None
    return x, y


@lru_cache(maxsize=8)
def _fit_constants(P_fit, validate_to):
    top = max(P_fit, validate_to)
    r = rm_counts(5, top)
    triv = RealCharacter(1, 1)
    e1 = eisenstein_series(2, triv, CHI5, top + 1).coeffs
    e2 = eisenstein_series(2, CHI5, triv, top + 1).coeffs
    rows = [(e1[n], e2[n]) for n in range(1, P_fit + 1)]
    sol = _solve_fit(rows, [int(r[n]) for n in range(1, P_fit + 1)])
    if sol is None:
        raise ArithmeticError("r_5 is not a combination of the two Eisenstein series on the fit range")
    c0 = Fraction(int(r[0]))
    c1, c2 = sol
    # hard validation gate against the enumeration
    L = c1.denominator * c2.denominator // np.gcd(c1.denominator, c2.denominator)
    a1, a2 = int(c1 * L), int(c2 * L)
    E1 = np.array(e1, dtype=np.int64)
    E2 = np.array(e2, dtype=np.int64)
    lhs = a1 * E1[1:validate_to + 1] + a2 * E2[1:validate_to + 1]
    bad = np.nonzero(lhs != L * r[1:validate_to + 1])[0]
    if bad.size:
        n = int(bad[0]) + 1
        raise ArithmeticError(f"fitted r_5 disagrees with enumeration at n = {n}")
    if c0 != 1:
        raise ArithmeticError("r_5(0) must be 1")
    return FitReport(c0, c1, c2, P_fit, validate_to)


def fit_A5(P_fit=40, P_out=1000, modulus=None, validate_to=10 ** 4):
    """Fit r_5 against E2^(1,chi5), E2^(chi5,1), validate, then emit P_out terms."""
    if P_fit < 20:
        raise ValueError("P_fit must be at least 20")
    rep = _fit_constants(P_fit, validate_to)
    triv = RealCharacter(1, 1)
    if modulus is None:
        e1 = eisenstein_series(2, triv, CHI5, P_out)
        e2 = eisenstein_series(2, CHI5, triv, P_out)
        s = e1 * rep.c1 + e2 * rep.c2
        c = list(s.coeffs)
        c[0] = rep.c0
        return FracSeries(c), rep
    e1 = eisenstein_series(2, triv, CHI5, P_out, modulus)
    e2 = eisenstein_series(2, CHI5, triv, P_out, modulus)
    s = e1 * rep.c1 + e2 * rep.c2
    c = s.coeffs.copy()
    c[0] = int(rep.c0) % modulus
    return ModSeries(c, modulus), rep


# ---------------------------------------------------------------- Delta and cphi

def delta_power_mod(e, ell, P):
    """Delta^e mod ell = q^e E(q)^{24e}, E-powers split through E^ell = E(q^ell)."""
    if e < 1:
        raise ValueError("e must be positive")
    return _euler_power(24 * e, P, ell).shift(e)


@lru_cache(maxsize=8)
def _cphi_cached(m, P, modulus):
    if m == 1:
        return invert(euler_product(P, modulus))
    if m == 5:
        A, _ = fit_A5(P_out=P, modulus=modulus)
    else:
        r = theta_series_fast(m, P - 1)
        A = FracSeries(r.tolist()) if modulus is None else ModSeries(r, modulus)
    return A * _euler_power(-m, P, modulus)


def cphi_series(m, P, modulus=None):
    """sum cphi_m(n) q^n = E(q)^{-m} * sum r_m(n) q^n, P terms."""
    if m < 1:
        raise ValueError("m must be positive")
    if m not in (1, 5) and (m > 8 or P > 10 ** 4 + 1):
        raise ValueError("only m = 1, 5 run at scale; other m need m <= 8 and P <= 10^4")
    if modulus is None and P > 2 * 10 ** 4:
        raise ValueError("exact cphi beyond 2*10^4 terms is not supported; pass a modulus")
    return _cphi_cached(m, P, modulus)


def partition_numbers(n):
    """p(0..n) by Euler's pentagonal recurrence (independent of series inversion)."""
    p = [1] + [0] * n
    for k in range(1, n + 1):
        total, j = 0, 1
        while True:
            g1 = j * (3 * j - 1) // 2
            if g1 > k:
                break
            sign = 1 if j % 2 else -1
            total += sign * p[k - g1]
            g2 = j * (3 * j + 1) // 2
            if g2 <= k:
                total += sign * p[k - g2]
            j += 1
        p[k] = total
    return p
