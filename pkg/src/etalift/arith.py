"""Kronecker symbols, real characters, epsilon factors and the numeric predicates
(suitability of (k, l), the Hasse exponent) used by the congruence machinery."""

from dataclasses import dataclass
from math import gcd, isqrt

import numpy as np


def jacobi(a, n):
    """Jacobi symbol (a/n) for odd positive n."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("jacobi needs an odd positive modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a, b):
    """Kronecker symbol (a/b), defined for every pair of integers."""
    if b == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if b < 0:
        b = -b
        if a < 0:
            result = -1
    v = (b & -b).bit_length() - 1
    if v:
        if a % 2 == 0:
            return 0
        b >>= v
        if v % 2 and a % 8 in (3, 5):
            result = -result
    if b == 1:
        return result
    return result * jacobi(a, b)


def _prime_factors(n):
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class RealCharacter:
    """n -> kronecker(kernel, n) on gcd(n, modulus) = 1, and 0 elsewhere."""

    modulus: int
    kernel: int = 1

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if self.kernel % 4 not in (0, 1):
            raise ValueError("kernel must be a discriminant (0 or 1 mod 4)")
        if self.kernel == 0:
            raise ValueError("kernel must be nonzero")
        for p in _prime_factors(self.kernel):
            if self.modulus % p:
                raise ValueError(f"prime {p} of the kernel does not divide the modulus")
        if self.kernel % 2 == 0 and self.modulus % 4:
            raise ValueError("even kernel needs 4 | modulus")

    @classmethod
    def trivial(cls, modulus=1):
        return cls(modulus, 1)

    @classmethod
    def legendre(cls, t):
        """The character j -> (j/t) for odd squarefree t > 0."""
        if t < 1 or t % 2 == 0:
            raise ValueError("t must be odd and positive")
        if t == 1:
            return cls(1, 1)
        return cls(t, t if t % 4 == 1 else -t)

    @classmethod
    def parse(cls, text, modulus=None):
        """Accepts "1", "5", "-7", "(./7)", "(12/.)"; ``modulus`` defaults to |kernel|."""
        text = str(text).strip().replace(" ", "")
        if text.startswith("(.") or text.startswith("(·"):
            t = int(text[3:-1])
            ch = cls.legendre(t)
            return ch if modulus is None else cls(modulus, ch.kernel)
        if text.startswith("(") and text.endswith("/.)") or text.endswith("/·)"):
            kern = int(text[1:-3])
        else:
            kern = int(text)
        if modulus is None:
            modulus = 1 if kern == 1 else abs(kern)
        return cls(modulus, kern)

    def __call__(self, n):
        if gcd(n, self.modulus) != 1:
            return 0
        return kronecker(self.kernel, n)

    def __mul__(self, other):
        m = self.modulus * other.modulus // gcd(self.modulus, other.modulus)
        return RealCharacter(m, self.kernel * other.kernel)

    def parity(self):
        return self(-1) if self.modulus > 1 else 1

    def values(self, n):
        """int64 array of chi(0..n)."""
        period = np.array([self(j) for j in range(self.modulus)], dtype=np.int64)
        reps = n // self.modulus + 1
        return np.tile(period, reps)[: n + 1]

    def label(self):
        if self.kernel == 1:
            return f"1 mod {self.modulus}"
        return f"({self.kernel}/.) mod {self.modulus}"


CHI12 = RealCharacter(12, 12)
CHI_M4 = RealCharacter(4, -4)


class Root24:
    """e(k/24), stored as k mod 24."""

    __slots__ = ("exponent",)

    def __init__(self, exponent=0):
        self.exponent = exponent % 24

    @classmethod
    def from_sign(cls, s):
        if s not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        return cls(0 if s == 1 else 12)

    def __mul__(self, other):
        if isinstance(other, int):
            return self * Root24.from_sign(other)
        return Root24(self.exponent + other.exponent)

    __rmul__ = __mul__

    def __pow__(self, k):
        return Root24(self.exponent * k)

    def inverse(self):
        return Root24(-self.exponent)

    def __neg__(self):
        return Root24(self.exponent + 12)

    def __eq__(self, other):
        if isinstance(other, int) and other in (1, -1):
            other = Root24.from_sign(other)
        return isinstance(other, Root24) and self.exponent == other.exponent

    def __hash__(self):
        return hash(self.exponent)

    def __repr__(self):
        return f"e({self.exponent}/24)"

    def value(self):
        import cmath

        return cmath.exp(2j * cmath.pi * self.exponent / 24)


I = Root24(6)


def epsilon_d(d):
    """1 if d = 1 mod 4, i if d = 3 mod 4."""
    if d % 2 == 0:
        raise ValueError("epsilon_d needs odd d")
    return Root24(0) if d % 4 == 1 else I


@dataclass(frozen=True)
class EpsilonPair:
    eps2: int
    eps3: int | None

    def __iter__(self):
        return iter((self.eps2, self.eps3))

    def for_prime(self, p):
        if p == 2:
            return self.eps2
        if p == 3:
            return self.eps3
        raise ValueError("only p = 2, 3 carry a sign")


def atkin_lehner_signs(r, psi):
    if r % 2 == 0:
        raise ValueError("r must be odd")
    r3 = r // gcd(r, 3)
    eps2 = -psi(2) * kronecker(8, r3)
    eps3 = None if r % 3 == 0 else -psi(3) * kronecker(12, r)
    if eps2 == 0 or eps3 == 0:
        raise ValueError("character vanishes at 2 or 3; signs undefined")
    return EpsilonPair(eps2, eps3)


def is_prime(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n):
    """All primes <= n as an int64 array."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


def is_squarefree(n):
    if n < 1:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        if n % p == 0:
            n //= p
        p += 1
    return True


def multiplicative_order(a, n, factors=None):
    if gcd(a, n) != 1:
        raise ValueError("a must be a unit mod n")
    phi = n - 1  # callers pass primes
    order = phi
    for p in factors if factors is not None else _prime_factors(phi):
        while order % p == 0 and pow(a, order // p, n) == 1:
            order //= p
    return order


def is_suitable_numeric(k, ell):
    if k % 2 or k < 2:
        raise ValueError("k must be a positive even integer")
    if ell < 5 or not is_prime(ell):
        raise ValueError("ell must be a prime >= 5")
    if k > ell - 1:
        return False
    p = pow(2, k - 1, ell)
    if p in (2, pow(2, -1, ell)):
        return False
    if k in ((ell + 1) // 2, (ell + 3) // 2):
        return False
    return (ell + 1) // gcd(ell + 1, k - 1) >= 6 and (ell - 1) // gcd(ell - 1, k - 1) >= 6


def hasse_exponent(ell, factors=None):
    """Least a >= 1 with 2^a = -2 mod ell, or None."""
    if ell < 5 or not is_prime(ell):
        raise ValueError("ell must be a prime >= 5")
    order = multiplicative_order(2, ell, factors)
    # 2^(a-1) = -1 needs an even order, and then a - 1 = order/2
    if order % 2:
        return None
    return order // 2 + 1


def hasse_density(limit):
    """Fraction of primes 5 <= l < limit for which hasse_exponent exists."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    primes = primes_up_to(limit - 1)
    primes = primes[primes >= 5]
    hits = 0
    for ell in primes.tolist():
        m = ell - 1
        fs = []
        while m > 1:
            p = int(spf[m]) or m
            fs.append(p)
            while m % p == 0:
                m //= p
        if hasse_exponent(ell, fs) is not None:
            hits += 1
    return hits / len(primes), len(primes)
