"""Truncated q-series over exponents n/D, D in {1, 8, 24}.

A series is q^{v/D} * (c_0 + c_1 q + c_2 q^2 + ...): coefficient c_i sits at the
exponent (v + D*i)/D, so every series lives on a single coset v mod D and the
coefficient list has no padding zeros.  ``coeff(n)`` looks up the coefficient of
q^{n/D} by numerator.  ``precision`` is the number of known terms.

FracSeries holds exact integers/Fractions; products go through Kronecker
substitution on big integers (gmpy2).  ModSeries holds int64 residues and
multiplies with the NTT kernels.
"""

from fractions import Fraction
from math import gcd

import gmpy2
import numpy as np

from . import kernels

DENOMS = (1, 8, 24)


class PrecisionError(ValueError):
    """Raised when a coefficient beyond the known precision is requested."""


def _lcm(a, b):
    return a * b // gcd(a, b)


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


def _common_denom(shape_a, shape_b, allow_mixed=False):
    da, db = shape_a, shape_b
    if da == db:
        return da
    if da == 1 or db == 1:
        return max(da, db)
    if allow_mixed:
        return _lcm(da, db)
    raise ValueError(f"incompatible exponent denominators {da} and {db}")


# ---------------------------------------------------------------- exact kernel

def _schoolbook(a, b, n):
    out = [0] * n
    for i, x in enumerate(a):
        if not x:
            continue
        for j in range(min(len(b), n - i)):
            out[i + j] += x * b[j]
    return out


def _stride(vals):
    g = 0
    for i, x in enumerate(vals):
        if x:
            g = gcd(g, i)
            if g == 1:
                return 1
    return g or 1


_UINT = {2: np.uint16, 4: np.uint32, 8: np.uint64}
_SINT = {2: np.int16, 4: np.int32, 8: np.int64}


def _pack(vals, nbytes):
    half = 1 << (8 * nbytes - 1)
    if nbytes in _UINT:
        ut = _UINT[nbytes]
        arr = np.array(vals, dtype=_SINT[nbytes]).astype(ut) + ut(half)
        raw = arr.tobytes()
    else:
        raw = b"".join((v + half).to_bytes(nbytes, "little") for v in vals)
    offset = int.from_bytes(half.to_bytes(nbytes, "little") * len(vals), "little")
    return int.from_bytes(raw, "little") - offset


def _unpack(z, count, nbytes):
    half = 1 << (8 * nbytes - 1)
    offset = int.from_bytes(half.to_bytes(nbytes, "little") * count, "little")
    # higher digits are multiples of B^count, so masking leaves exactly the low ones
    low = (z + offset) & ((1 << (8 * nbytes * count)) - 1)
    raw = low.to_bytes(nbytes * count, "little")
    if nbytes in _UINT:
        ut = _UINT[nbytes]
        arr = np.frombuffer(raw[: nbytes * count], dtype=ut) - ut(half)
        return arr.view(_SINT[nbytes]).tolist()
    return [int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half for i in range(count)]


def conv_int(a, b, n):
    """First n coefficients of the product of two integer lists."""
    a, b = list(a[:n]), list(b[:n])
    while a and not a[-1]:
        a.pop()
    while b and not b[-1]:
        b.pop()
    if not a or not b:
        return [0] * n
    if min(len(a), len(b)) <= 32:
        return _schoolbook(a, b, n)
    # compress a common stride (eta products in q^delta are sparse this way)
    s = gcd(_stride(a), _stride(b))
    if s > 1:
        sub = conv_int(a[::s], b[::s], (n + s - 1) // s)
        out = [0] * n
        out[::s] = sub[: len(out[::s])]
        return out
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    bound = ma * mb * min(len(a), len(b))
    nbytes = (bound.bit_length() + 9) // 8
    for w in (2, 4, 8):
        if nbytes <= w:
            nbytes = w
            break
    x = gmpy2.mpz(_pack(a, nbytes))
    y = x if a is b or a == b else gmpy2.mpz(_pack(b, nbytes))
    z = int(x * y)
    count = min(n, len(a) + len(b) - 1)
    out = _unpack(z, count, nbytes)
    return out + [0] * (n - count)


def _to_integer_list(coeffs):
    """(integers, L) with coeffs = integers / L."""
    L = 1
    for c in coeffs:
        if isinstance(c, Fraction):
            L = _lcm(L, c.denominator)
    if L == 1:
        return list(coeffs), 1
    return [int(c * L) for c in coeffs], L


def _from_integer_list(ints, L):
    if L == 1:
        return ints
    return [_norm(Fraction(x, L)) for x in ints]


def conv_exact(a, b, n):
    ia, la = _to_integer_list(a)
    ib, lb = (ia, la) if a is b else _to_integer_list(b)
    return _from_integer_list(conv_int(ia, ib, n), la * lb)


# ---------------------------------------------------------------- base class

class _Series:
    __slots__ = ()

    def _check_coset(self, n):
        return (n - self.valuation) % self.denom == 0

    def index_of(self, n):
        """Position of numerator n in the coefficient list, or None off-coset."""
        d = n - self.valuation
        if d % self.denom:
            return None
        return d // self.denom

    @property
    def precision(self):
        return len(self.coeffs)

    def last_numerator(self):
        """Largest numerator whose coefficient is known."""
        return self.valuation + self.denom * (self.precision - 1)

    def exponents(self):
        return [Fraction(self.valuation + self.denom * i, self.denom) for i in range(self.precision)]

    def knows(self, n):
        return n <= self.last_numerator()

    def leading(self):
        """(numerator, coefficient) of the first nonzero term, or None."""
        for i, c in enumerate(self.coeffs):
            if c:
                return self.valuation + self.denom * i, c
        return None


# ---------------------------------------------------------------- exact series

class FracSeries(_Series):
    """Exact truncated series q^{v/D} * sum c_i q^i with int/Fraction coefficients."""

    __slots__ = ("denom", "valuation", "coeffs")

    def __init__(self, coeffs, valuation=0, denom=1):
        if denom not in DENOMS:
            raise ValueError(f"denominator must be one of {DENOMS}")
        self.denom = denom
        self.valuation = int(valuation)
        self.coeffs = tuple(_norm(c if isinstance(c, (int, Fraction)) else Fraction(c)) for c in coeffs)

    modulus = None

    # construction helpers
    @classmethod
    def zero(cls, precision, valuation=0, denom=1):
        return cls([0] * precision, valuation, denom)

    @classmethod
    def one(cls, precision, denom=1):
        return cls([1] + [0] * (precision - 1), 0, denom)

    @classmethod
    def from_dict(cls, terms, precision, valuation=0, denom=1):
        """terms maps numerators to coefficients."""
        c = [0] * precision
        for n, a in terms.items():
            i = (n - valuation)
            if i % denom:
                raise ValueError(f"numerator {n} is off the coset {valuation} mod {denom}")
            i //= denom
            if 0 <= i < precision:
                c[i] = a
        return cls(c, valuation, denom)

    def _like(self, coeffs, valuation=None, denom=None):
        return FracSeries(coeffs, self.valuation if valuation is None else valuation,
                          self.denom if denom is None else denom)

    def coeff(self, n):
        d = n - self.valuation
        if d % self.denom or d < 0:
            return 0
        i = d // self.denom
        if i >= len(self.coeffs):
            raise PrecisionError(f"coefficient at {n}/{self.denom} is beyond precision")
        return self.coeffs[i]

    def is_integral(self):
        return all(not isinstance(c, Fraction) for c in self.coeffs)

    def is_zero(self):
        return not any(self.coeffs)

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        return (f"FracSeries(q^({self.valuation}/{self.denom}) * [{head}"
                f"{', ...' if self.precision > 6 else ''}], P={self.precision})")

    def __eq__(self, other):
        return (isinstance(other, FracSeries) and self.denom == other.denom
                and self.valuation == other.valuation and self.coeffs == other.coeffs)

    __hash__ = None

    # denominators
    def with_denom(self, denom):
        """Re-express over another exponent denominator (exact, no data change)."""
        if denom == self.denom:
            return self
        num = self.valuation * denom
        if num % self.denom:
            raise ValueError(f"valuation {self.valuation}/{self.denom} is not a multiple of 1/{denom}")
        return FracSeries(self.coeffs, num // self.denom, denom)

    def _promote(self, denom):
        if self.denom == denom:
            return self
        if self.denom != 1:
            raise ValueError(f"cannot promote denominator {self.denom} to {denom}")
        return self.with_denom(denom)

    def truncate(self, precision):
        return self._like(self.coeffs[:precision])

    def shift(self, numerator):
        """Multiply by q^{numerator/D}."""
        return self._like(self.coeffs, self.valuation + numerator)

    def map(self, f):
        return self._like([f(c) for c in self.coeffs])

    # linear structure
    def _align(self, other):
        D = _common_denom(self.denom, other.denom)
        a, b = self._promote(D), other._promote(D)
        if (a.valuation - b.valuation) % D:
            raise ValueError("series live on different exponent cosets")
        v = min(a.valuation, b.valuation)
        end = min(a.valuation + D * a.precision, b.valuation + D * b.precision)
        P = max((end - v) // D, 0)
        return a, b, v, D, P

    def _padded(self, v, P):
        off = (self.valuation - v) // self.denom
        out = [0] * P
        for i, c in enumerate(self.coeffs[: max(P - off, 0)]):
            out[off + i] = c
        return out

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self
            span = max(self.last_numerator() // self.denom, 0)
            other = FracSeries([other] + [0] * span, 0, self.denom)
        a, b, v, D, P = self._align(other)
        return FracSeries([x + y for x, y in zip(a._padded(v, P), b._padded(v, P))], v, D)

    __radd__ = __add__

    def __neg__(self):
        return self._like([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._like([c * other for c in self.coeffs])
        if isinstance(other, FracSeries):
            return mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k):
        return power(self, k)

    def to_json(self):
        return {
            "denom": self.denom,
            "valuation": self.valuation,
            "modulus": None,
            "coeffs": [c if isinstance(c, int) else f"{c.numerator}/{c.denominator}" for c in self.coeffs],
        }


# ---------------------------------------------------------------- modular series

class ModSeries(_Series):
    """Truncated series with int64 residues mod a modulus below 2^31."""

    __slots__ = ("denom", "valuation", "coeffs", "modulus")

    def __init__(self, coeffs, modulus, valuation=0, denom=1):
        if denom not in DENOMS:
            raise ValueError(f"denominator must be one of {DENOMS}")
        modulus = int(modulus)
        if not 2 <= modulus < (1 << 31):
            raise ValueError("modulus must lie in [2, 2^31)")
        arr = np.asarray(coeffs)
        if arr.dtype == object:
            arr = np.array([int(x) % modulus for x in arr], dtype=np.int64)
        else:
            arr = arr.astype(np.int64) % modulus
        arr.setflags(write=False)
        self.coeffs = arr
        self.modulus = modulus
        self.valuation = int(valuation)
        self.denom = denom

    @classmethod
    def zero(cls, precision, modulus, valuation=0, denom=1):
        return cls(np.zeros(precision, dtype=np.int64), modulus, valuation, denom)

    @classmethod
    def one(cls, precision, modulus, denom=1):
        c = np.zeros(precision, dtype=np.int64)
        c[0] = 1
        return cls(c, modulus, 0, denom)

    def _like(self, coeffs, valuation=None, denom=None):
        return ModSeries(coeffs, self.modulus, self.valuation if valuation is None else valuation,
                         self.denom if denom is None else denom)

    def coeff(self, n):
        d = n - self.valuation
        if d % self.denom or d < 0:
            return 0
        i = d // self.denom
        if i >= len(self.coeffs):
            raise PrecisionError(f"coefficient at {n}/{self.denom} is beyond precision")
        return int(self.coeffs[i])

    def is_zero(self):
        return not self.coeffs.any()

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6].tolist())
        return (f"ModSeries(q^({self.valuation}/{self.denom}) * [{head}"
                f"{', ...' if self.precision > 6 else ''}] mod {self.modulus}, P={self.precision})")

    def __eq__(self, other):
        return (isinstance(other, ModSeries) and self.modulus == other.modulus
                and self.denom == other.denom and self.valuation == other.valuation
                and np.array_equal(self.coeffs, other.coeffs))

    __hash__ = None

    def with_denom(self, denom):
        if denom == self.denom:
            return self
        num = self.valuation * denom
        if num % self.denom:
            raise ValueError(f"valuation {self.valuation}/{self.denom} is not a multiple of 1/{denom}")
        return ModSeries(self.coeffs, self.modulus, num // self.denom, denom)

    def _promote(self, denom):
        if self.denom == denom:
            return self
        if self.denom != 1:
            raise ValueError(f"cannot promote denominator {self.denom} to {denom}")
        return self.with_denom(denom)

    def truncate(self, precision):
        return self._like(self.coeffs[:precision])

    def shift(self, numerator):
        return self._like(self.coeffs, self.valuation + numerator)

    def _align(self, other):
        if self.modulus != other.modulus:
            raise ValueError("moduli differ")
        D = _common_denom(self.denom, other.denom)
        a, b = self._promote(D), other._promote(D)
        if (a.valuation - b.valuation) % D:
            raise ValueError("series live on different exponent cosets")
        v = min(a.valuation, b.valuation)
        end = min(a.valuation + D * a.precision, b.valuation + D * b.precision)
        P = max((end - v) // D, 0)
        return a, b, v, D, P

    def _padded(self, v, P):
        off = (self.valuation - v) // self.denom
        out = np.zeros(P, dtype=np.int64)
        take = max(min(P - off, self.precision), 0)
        out[off:off + take] = self.coeffs[:take]
        return out

    def __add__(self, other):
        a, b, v, D, P = self._align(other)
        return ModSeries(a._padded(v, P) + b._padded(v, P), self.modulus, v, D)

    def __neg__(self):
        return self._like(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self._like(self.coeffs * (int(other) % self.modulus))
        if isinstance(other, Fraction):
            num = other.numerator % self.modulus
            den = pow(other.denominator, -1, self.modulus)
            return self._like(self.coeffs * (num * den % self.modulus))
        if isinstance(other, ModSeries):
            return mul_mod(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k):
        return power(self, k)

    def to_json(self):
        return {
            "denom": self.denom,
            "valuation": self.valuation,
            "modulus": self.modulus,
            "coeffs": self.coeffs.tolist(),
        }


# ---------------------------------------------------------------- products

def mul(A, B):
    """Cauchy product of exact series; precision is min of the operands'."""
    if isinstance(A, ModSeries) or isinstance(B, ModSeries):
        return mul_mod(A, B)
    D = _common_denom(A.denom, B.denom)
    A, B = A._promote(D), B._promote(D)
    P = min(A.precision, B.precision)
    return FracSeries(conv_exact(A.coeffs, B.coeffs, P), A.valuation + B.valuation, D)


# schoolbook for short inputs; NTT beyond this length
NTT_THRESHOLD = 64


def _conv_mod(a, b, n, M):
    la, lb = min(len(a), n), min(len(b), n)
    if la == 0 or lb == 0:
        return np.zeros(n, dtype=np.int64)
    if min(la, lb) <= NTT_THRESHOLD and (M - 1) ** 2 * min(la, lb) < (1 << 63):
        short, long_ = (a[:la], b[:lb]) if la <= lb else (b[:lb], a[:la])
        out = np.zeros(n, dtype=np.int64)
        for i, x in enumerate(short.tolist()):
            if x and i < n:
                seg = long_[: n - i]
                out[i:i + len(seg)] = (out[i:i + len(seg)] + x * seg) % M
        return out
    return kernels.convolve_mod(a, b, n, M)


def mul_mod(A, B):
    if not isinstance(A, ModSeries) or not isinstance(B, ModSeries):
        raise TypeError("mul_mod needs two ModSeries")
    if A.modulus != B.modulus:
        raise ValueError("moduli differ")
    D = _common_denom(A.denom, B.denom)
    A, B = A._promote(D), B._promote(D)
    P = min(A.precision, B.precision)
    return ModSeries(_conv_mod(A.coeffs, B.coeffs, P, A.modulus), A.modulus,
                     A.valuation + B.valuation, D)


def reduce_mod(A, modulus):
    """Exact series -> residues; Fraction denominators must be invertible."""
    out = np.empty(A.precision, dtype=np.int64)
    for i, c in enumerate(A.coeffs):
        if isinstance(c, Fraction):
            out[i] = c.numerator * pow(c.denominator, -1, modulus) % modulus
        else:
            out[i] = c % modulus
    return ModSeries(out, modulus, A.valuation, A.denom)


def lift_int(A):
    """ModSeries -> FracSeries with representatives in [0, M)."""
    return FracSeries(A.coeffs.tolist(), A.valuation, A.denom)


# ---------------------------------------------------------------- inversion, powers

def _invert_int_unit(c, n):
    """Inverse of an integer power series with constant term +-1, n terms."""
    c0 = c[0]
    g = [c0]  # 1/c0 = c0 for units
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        e = conv_int(c[:prec], g, prec)
        e = [-x for x in e]
        e[0] += 2
        g = conv_int(g, e, prec)
    return g


def _invert_mod(c, n, M):
    c0 = int(c[0])
    try:
        inv0 = pow(c0, -1, M)
    except ValueError:
        raise ValueError("leading coefficient is not a unit") from None
    g = np.zeros(1, dtype=np.int64)
    g[0] = inv0
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        e = (-_conv_mod(c[:prec], g, prec, M)) % M
        e[0] = (e[0] + 2) % M
        g = _conv_mod(g, e, prec, M)
    return g


def invert(A):
    """Multiplicative inverse; valuation negates, precision is preserved."""
    lead = A.leading()
    if lead is None:
        raise ValueError("cannot invert the zero series")
    n0, c0 = lead
    i0 = (n0 - A.valuation) // A.denom
    P = A.precision - i0
    if isinstance(A, ModSeries):
        g = _invert_mod(A.coeffs[i0:], P, A.modulus)
        return ModSeries(g, A.modulus, -n0, A.denom)
    body = list(A.coeffs[i0:])
    ints, L = _to_integer_list(body)
    if L == 1 and abs(c0) == 1:
        return FracSeries(_invert_int_unit(ints, P), -n0, A.denom)
    # c0 * (1 + h) with h having denominators dividing L: invert f(Lq), then rescale
    scaled = [Fraction(x) / c0 for x in body]
    Lh = 1
    for x in scaled:
        Lh = _lcm(Lh, x.denominator)
    h = [int(x * Lh ** i) for i, x in enumerate(scaled)]
    g = _invert_int_unit(h, P)
    return FracSeries([Fraction(x, Lh ** i) / c0 for i, x in enumerate(g)], -n0, A.denom)


def power(A, k):
    if k < 0:
        return power(invert(A), -k)
    if isinstance(A, ModSeries):
        result = ModSeries.one(A.precision, A.modulus, A.denom)
    else:
        result = FracSeries.one(A.precision, A.denom)
    base = A
    first = True
    while k:
        if k & 1:
            result = base if first else result * base
            first = False
        k >>= 1
        if k:
            base = base * base
    return result


# ---------------------------------------------------------------- operators

def u_operator(A, m):
    """Coefficient at n/D becomes the input coefficient at mn/D."""
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        return A
    D, v = A.denom, A.valuation
    g = gcd(m, D)
    last = A.last_numerator()
    if v % g:
        # no numerator n has mn on the coset: the image is zero
        start = -((-v) // m)
        count = max((last // m - start) // D + 1, 0)
        return A._like(np.zeros(count, dtype=np.int64) if isinstance(A, ModSeries) else [0] * count, start)
    if g > 1:
        raise ValueError(f"U_{m} image is not a single coset over denominator {D}; rescale first")
    n0 = v * pow(m, -1, D) % D if D > 1 else 0
    start = -((-v) // m)
    start += (n0 - start) % D
    i0 = (m * start - v) // D
    coeffs = A.coeffs[i0::m]
    count = max((last // m - start) // D + 1, 0) if last >= m * start else 0
    return A._like(coeffs[:count], start)


def v_operator(A, m):
    """Exponent n/D becomes mn/D; precision scales by m."""
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        return A
    P = A.precision * m
    if isinstance(A, ModSeries):
        out = np.zeros(P, dtype=np.int64)
        out[::m] = A.coeffs
    else:
        out = [0] * P
        out[::m] = A.coeffs
    return A._like(out, A.valuation * m)


def twist(A, chi, numerator=False):
    """Multiply the coefficient at n (D = 1) by chi(n).

    For D > 1 the numerator of the exponent is twisted when ``numerator`` is set.
    """
    if A.denom != 1 and not numerator:
        raise ValueError("twist needs integral exponents (pass numerator=True to twist numerators)")
    v, D = A.valuation, A.denom
    if isinstance(A, ModSeries):
        nums = v + D * np.arange(A.precision, dtype=np.int64)
        vals = chi.values(int(nums.max()) if A.precision else 0) if v >= 0 else None
        if vals is not None:
            w = vals[nums]
        else:
            w = np.array([chi(int(n)) for n in nums], dtype=np.int64)
        return A._like(A.coeffs * w)
    return A._like([c * chi(v + D * i) if c else 0 for i, c in enumerate(A.coeffs)])


def pentagonal_terms(P):
    """(index, sign) pairs of prod(1 - q^n) below P."""
    out = [(0, 1)]
    k = 1
    while True:
        a = k * (3 * k - 1) // 2
        if a >= P:
            break
        s = -1 if k % 2 else 1
        out.append((a, s))
        b = k * (3 * k + 1) // 2
        if b < P:
            out.append((b, s))
        k += 1
    return out


def euler_product(P, modulus=None):
    """prod_{n>=1} (1 - q^n) to P terms."""
    if P < 1:
        raise ValueError("precision must be positive")
    if modulus is None:
        c = [0] * P
        for i, s in pentagonal_terms(P):
            c[i] = s
        return FracSeries(c)
    c = np.zeros(P, dtype=np.int64)
    for i, s in pentagonal_terms(P):
        c[i] = s % modulus
    return ModSeries(c, modulus)


def eta_series(P, modulus=None):
    """q^{1/24} prod(1 - q^n)."""
    E = euler_product(P, modulus)
    return E.with_denom(24).shift(1)


def series_from_json(obj):
    D, v, M = obj["denom"], obj["valuation"], obj.get("modulus")
    if M is not None:
        return ModSeries(np.array([int(c) for c in obj["coeffs"]], dtype=np.int64), M, v, D)
    return FracSeries([Fraction(c) if isinstance(c, str) else c for c in obj["coeffs"]], v, D)
