"""Eta and theta multipliers as exact 24th roots of unity, and a high-precision
harness that checks transformation laws of truncated q-series numerically."""

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, log2

import gmpy2

from .arith import RealCharacter, Root24, epsilon_d, kronecker
from .qseries import FracSeries, eta_series, v_operator


@dataclass(frozen=True)
class GL2Int:
    a: int
    b: int
    c: int
    d: int

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    def is_sl2(self):
        return self.det == 1

    def in_gamma0(self, N):
        return self.is_sl2() and self.c % N == 0

    def __neg__(self):
        return GL2Int(-self.a, -self.b, -self.c, -self.d)

    def __matmul__(self, o):
        return GL2Int(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                      self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def act(self, z):
        return (self.a * z + self.b) / (self.c * z + self.d)


IDENTITY = GL2Int(1, 0, 0, 1)


def nu_eta(g):
    """The eta multiplier: eta(gz) = nu(g) (cz+d)^{1/2} eta(z), principal branch."""
    if g.det != 1:
        raise ValueError("nu_eta needs determinant 1")
    a, b, c, d = g.a, g.b, g.c, g.d
    if c == 0:
        if d == 1:
            return Root24(b)
        # -(translation): (cz+d)^{1/2} = (-1)^{1/2} = i on the principal branch
        return Root24(-6) * nu_eta(-g)
    if c < 0:
        return Root24(6) * nu_eta(-g)
    if c % 2:
        sym = kronecker(d, c)
        k = (a + d) * c - b * d * (c * c - 1) - 3 * c
    else:
        sym = kronecker(c, d)
        k = (a + d) * c - b * d * (c * c - 1) + 3 * d - 3 - 3 * c * d
    return Root24(k + (12 if sym == -1 else 0))


def nu_theta(g):
    """theta(gz) = nu_theta(g) (cz+d)^{1/2} theta(z) on Gamma_0(4)."""
    if g.det != 1:
        raise ValueError("nu_theta needs determinant 1")
    if g.c % 4:
        raise ValueError("nu_theta is defined on Gamma_0(4)")
    sym = kronecker(g.c, g.d)
    return Root24.from_sign(sym) * epsilon_d(g.d).inverse()


def random_gamma0(N, rng, kmax=30, dmax=200, c_positive=True):
    """c = N k with 1 <= k <= kmax, |d| <= dmax coprime to c, a and b from Bezout."""
    while True:
        k = rng.randint(1, kmax)
        c = N * k
        if not c_positive and rng.random() < 0.5:
            c = -c
        d = rng.randint(-dmax, dmax)
        if d == 0 or gcd(c, d) != 1:
            continue
        a = pow(d, -1, abs(c)) if abs(c) > 1 else 1
        a += abs(c) * rng.randint(-2, 2)
        b = (a * d - 1) // c
        g = GL2Int(a, b, c, d)
        if g.det == 1:
            return g


def random_sl2(rng, cmax=50):
    return random_gamma0(1, rng, kmax=cmax, dmax=cmax)


# ---------------------------------------------------------------- numeric harness

class ConvergenceError(ValueError):
    pass


def _mp_root(k, bits):
    with gmpy2.context(gmpy2.get_context(), precision=bits):
        return gmpy2.exp(2 * gmpy2.const_pi() * gmpy2.mpc(0, 1) * k / 24)


def _strided(series, terms=None):
    coeffs = series.coeffs if terms is None else series.coeffs[:terms]
    s = 0
    for i, c in enumerate(coeffs):
        if c:
            s = gcd(s, i)
            if s == 1:
                break
    s = s or 1
    return coeffs[::s], s


def _as_mp(c):
    if isinstance(c, Fraction):
        return gmpy2.mpq(c.numerator, c.denominator)
    return gmpy2.mpz(c)


def _mag2(c):
    """Rough log2 |c| for an int or Fraction."""
    if isinstance(c, Fraction):
        return c.numerator.bit_length() - c.denominator.bit_length()
    return abs(c).bit_length()


def evaluate(series, z, bits=None, terms=None, check_tail=True, rel_tol=1e-30):
    """Sum the series at z (complex, Im z > 0); returns a gmpy2 mpc.

    The working precision adapts to the cancellation between the largest term
    and the total.  With ``check_tail`` the first omitted term is bounded by the
    largest coefficient in the last quarter times |q|^P and must fall below
    rel_tol * |F|.
    """
    if not isinstance(series, FracSeries):
        raise TypeError("evaluate needs an exact series")
    zi = float(gmpy2.mpc(z).imag)
    if zi <= 0:
        raise ValueError("evaluation point must lie in the upper half plane")
    cs, s = _strided(series, terms)
    D, v = series.denom, series.valuation
    step_log2 = -2 * 3.141592653589793 * zi * s / 0.6931471805599453  # log2 |q^s|
    top = max((_mag2(c) + i * step_log2 for i, c in enumerate(cs) if c), default=0)
    bits = bits or 128
    for _ in range(4):
        with gmpy2.context(gmpy2.get_context(), precision=bits):
            zz = gmpy2.mpc(z)
            two_pi_i = 2 * gmpy2.const_pi() * gmpy2.mpc(0, 1)
            y = gmpy2.exp(two_pi_i * s * zz)
            acc = gmpy2.mpc(0)
            for c in reversed(cs):
                acc = acc * y + (_as_mp(c) if c else 0)
            val = acc * gmpy2.exp(two_pi_i * v * zz / D)
            mag = abs(acc)
            f2 = float(gmpy2.log2(mag)) if mag > 0 else -float("inf")
            need = int(top - f2) + 80 if f2 != -float("inf") else bits * 2
            if need <= bits:
                break
            bits = need
    if check_tail and len(cs):
        tail_c = max((_mag2(c) for c in cs[-max(len(cs) // 4, 1):]), default=0) + 4
        tail = tail_c + len(cs) * step_log2
        if f2 == -float("inf") or tail - f2 > log2(rel_tol):
            raise ConvergenceError(
                f"truncation after {len(cs) * s} terms is too coarse at Im z = {zi:.4g}")
    return val, bits


def default_point(g):
    """z0 = -d/c + i/c, where z0 and g z0 both have imaginary part 1/c."""
    if g.c == 0:
        return complex(0.1, 1.05)
    c = abs(g.c)
    return complex(-g.d / g.c, 1.0 / c)


def _mp_point(g, bits):
    with gmpy2.context(gmpy2.get_context(), precision=bits):
        if g.c == 0:
            return gmpy2.mpc(gmpy2.mpfr("0.1"), gmpy2.mpfr("1.05"))
        c = abs(g.c)
        return gmpy2.mpc(gmpy2.mpq(-g.d, g.c), gmpy2.mpq(1, c))


def verify_transform_numeric(series, weight, gamma, predicted, z0=None, terms=None,
                             absolute=True):
    """Residual |F(g z0) - mu (c z0 + d)^weight F(z0)|.

    ``predicted`` is a Root24 (exact) or a complex number.  With
    ``absolute=False`` the residual is divided by |F(g z0)|.  Requires c > 0 or a
    translation (c = 0, d = 1) so the principal branch is unambiguous.
    """
    g = gamma
    if g.c < 0 or (g.c == 0 and g.d != 1):
        raise ValueError("numeric checks use c > 0 (or translations) to fix the branch")
    bits = 160
    for _ in range(3):
        with gmpy2.context(gmpy2.get_context(), precision=bits):
            z = _mp_point(g, bits) if z0 is None else gmpy2.mpc(z0)
            gz = (g.a * z + g.b) / (g.c * z + g.d)
            lhs, b1 = evaluate(series, gz, bits=bits, terms=terms)
            rhs0, b2 = evaluate(series, z, bits=bits, terms=terms)
            need = max(b1, b2)
            if need > bits:
                bits = need
                continue
            w = gmpy2.mpfr(Fraction(weight).numerator) / Fraction(weight).denominator
            factor = gmpy2.exp(w * gmpy2.log(g.c * z + g.d))
            mu = _mp_root(predicted.exponent, bits) if isinstance(predicted, Root24) else gmpy2.mpc(predicted)
            diff = abs(lhs - mu * factor * rhs0)
            if absolute:
                return float(diff)
            scale = abs(lhs)
            if scale == 0:
                return float(diff)
            return float(diff / scale)
    raise ConvergenceError("precision did not stabilize")


# ---------------------------------------------------------------- exact lemmas

def check_nu_v_t(g, r, t):
    """nu^r((a, tb; c/t, d)) = (d/t) nu^{rt}(g) in Root24 arithmetic."""
    if r % 2 == 0 or t % 2 == 0:
        raise ValueError("r and t must be odd")
    if g.c % t:
        raise ValueError("c must be divisible by t")
    if r % 3 and t % 3 == 0:
        raise ValueError("3 must not divide t when 3 does not divide r")
    h = GL2Int(g.a, t * g.b, g.c // t, g.d)
    lhs = nu_eta(h) ** r
    rhs = Root24.from_sign(kronecker(g.d, t)) * nu_eta(g) ** (r * t)
    return lhs == rhs


def psi_prime(r, lam, psi=None):
    """Character attached to F|V_24 ((r,6)=1) or F|V_8 ((r,6)=3) in the theta convention."""
    psi = psi or RealCharacter(1, 1)
    e = (lam + (r - 1) // 2) % 2
    minus4 = RealCharacter(4, -4)
    out = psi * minus4 if e else psi * RealCharacter(4, 1)
    if gcd(r, 6) == 1:
        out = out * RealCharacter(12, 12)
    return out


_eta_power_cache = {}


def eta_power_series(r, terms):
    key = (r, terms)
    if key not in _eta_power_cache:
        _eta_power_cache[key] = eta_series(terms) ** r
    return _eta_power_cache[key]


def check_eta_to_theta(r, lam, gamma, terms=3000, tol=1e-9):
    """eta^r | V_24 (or V_8 when 3 | r) transforms like psi'(d) nu_theta^{2lam+1}."""
    if r % 2 == 0:
        raise ValueError("r must be odd")
    if gcd(r, 6) == 1:
        N, m = 576, 24
    elif r % 3 == 0:
        N, m = 64, 8
    else:
        raise ValueError("r must be odd")
    if not gamma.in_gamma0(N):
        raise ValueError(f"gamma must lie in Gamma_0({N})")
    F = eta_power_series(r, terms)
    G = v_operator(F, m).with_denom(1)
    mult = Root24.from_sign(psi_prime(r, lam)(gamma.d)) * nu_theta(gamma) ** (2 * lam + 1)
    res = verify_transform_numeric(G, Fraction(r, 2), gamma, mult)
    return res < tol


def theta_mult_power_identity(r, lam, g):
    """nu_theta^r = nu_theta^{2 lam+1} (-1/d)^{lam + (r-1)/2}, exactly."""
    lhs = nu_theta(g) ** r
    e = (lam + (r - 1) // 2) % 2
    rhs = nu_theta(g) ** (2 * lam + 1) * Root24.from_sign(kronecker(-1, g.d) if e else 1)
    return lhs == rhs


def make_rng(seed=0):
    return random.Random(seed)
