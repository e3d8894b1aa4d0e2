"""Hecke operators on coefficient lists: half-integral T_{p^2} for the eta
multiplier (both residue conventions), T^s_{p^2} for the theta multiplier,
integral-weight T_p, and the U_p eigen-relation forced by Atkin-Lehner signs."""

from dataclasses import dataclass
from fractions import Fraction
import numpy as np

from .arith import RealCharacter, is_prime, kronecker
from .qseries import FracSeries, ModSeries, PrecisionError


@dataclass(frozen=True)
class HalfIntegralMeta:
    """Weight lam + 1/2, level N, character psi times nu^r."""

    lam: int
    N: int
    psi: RealCharacter
    r: int

    def __post_init__(self):
        if self.r % 2 == 0:
            raise ValueError("r must be odd")
        if self.lam < 0 or self.N < 1:
            raise ValueError("need lam >= 0 and N >= 1")
        if self.N % self.psi.modulus:
            raise ValueError("psi must be defined modulo a divisor of N")

    @property
    def denom(self):
        return 8 if self.r % 3 == 0 else 24

    @property
    def residue(self):
        """Exponent numerators of F lie in this class modulo ``denom``."""
        return (self.r // 3) % 8 if self.r % 3 == 0 else self.r % 24

    @property
    def chi_lift(self):
        """(12/.) when (r,6) = 1, (-4/.) when 3 | r."""
        return RealCharacter(4, -4) if self.r % 3 == 0 else RealCharacter(12, 12)

    @property
    def is_trivial_space(self):
        """psi(-1) must equal (-1/r)(-1)^lam, otherwise the space is zero."""
        return self.psi.parity() != kronecker(-1, self.r) * (-1) ** self.lam

    @property
    def target_level(self):
        return 2 * self.N if self.r % 3 == 0 else 6 * self.N

    @classmethod
    def from_json(cls, obj):
        N = int(obj["N"])
        psi = obj.get("psi", "1")
        psi = psi if isinstance(psi, RealCharacter) else RealCharacter.parse(psi, None)
        if psi.kernel == 1:
            psi = RealCharacter(N, 1)
        elif N % psi.modulus == 0 and psi.modulus != N:
            psi = RealCharacter(N, psi.kernel)
        return cls(int(obj["lambda"]), N, psi, int(obj["r"]))

    def to_json(self):
        return {"lambda": self.lam, "N": self.N, "psi": str(self.psi.kernel), "r": self.r}

    def normalize(self, F):
        """Re-express F over ``denom`` and check its support."""
        G = F.with_denom(self.denom)
        if not G.is_zero() and G.valuation % self.denom != self.residue:
            raise ValueError(
                f"series is supported on {G.valuation} mod {G.denom}, expected {self.residue}")
        return G


# ---------------------------------------------------------------- helpers

def _lookup(A):
    """n -> coefficient, 0 off the coset or below the valuation."""
    coeffs = A.coeffs.tolist() if isinstance(A, ModSeries) else A.coeffs
    v, D, P = A.valuation, A.denom, A.precision

    def get(n):
        d = n - v
        if d < 0 or d % D:
            return 0
        i = d // D
        if i >= P:
            raise PrecisionError(f"coefficient at {n}/{D} is beyond precision")
        return coeffs[i]

    return get


def _build(A, start, count, values):
    if isinstance(A, ModSeries):
        M = A.modulus
        arr = np.array([int(x) % M for x in values], dtype=np.int64) if count else np.zeros(0, np.int64)
        return ModSeries(arr, M, start, A.denom)
    return FracSeries(values, start, A.denom)


def _image_range(A, scale):
    """First numerator n on A's coset with scale*n >= valuation, and how many
    consecutive coset numerators have scale*n within precision."""
    v, D = A.valuation, A.denom
    lo = -((-v) // scale) if v < 0 else 0
    start = lo + (v - lo) % D
    bound = A.last_numerator() // scale
    count = (bound - start) // D + 1 if bound >= start else 0
    return start, count


def _ppow(p, e):
    return p ** e if e >= 0 else Fraction(1, p ** -e)


def _check_prime(p):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


# ---------------------------------------------------------------- operators

def t_p2_eta(meta, F, p):
    """T_{p^2} on S_{lam+1/2}(N, psi nu^r) in the eta-multiplier normalization."""
    _check_prime(p)
    if meta.denom == 24 and p < 5:
        raise ValueError("T_{p^2} needs p >= 5 when (r, 6) = 1")
    if meta.denom == 8 and p < 3:
        raise ValueError("T_{p^2} needs p >= 3 when 3 | r")
    F = meta.normalize(F)
    get = _lookup(F)
    sign = kronecker(-1, p) ** ((meta.r - 1) // 2 % 2)
    psi_p = meta.psi(p)
    mid = sign * psi_p * _ppow(p, meta.lam - 1)
    low = psi_p * psi_p * p ** (2 * meta.lam - 1)
    p2 = p * p
    start, count = _image_range(F, p2)
    out = []
    for i in range(count):
        n = start + F.denom * i
        sym = kronecker(12 * n, p) if meta.denom == 24 else kronecker(n, p)
        val = get(p2 * n)
        a = get(n)
        if a and sym:
            val += mid * sym * a
        if n % p2 == 0:
            val += low * get(n // p2)
        out.append(val)
    return _build(F, start, count, out)


def t_p2_theta(lam, N, psi, G, p):
    """T^s_{p^2} on forms with the theta multiplier (integral exponents)."""
    _check_prime(p)
    if p == 2:
        raise ValueError("T^s_{p^2} needs an odd prime")
    if G.denom != 1:
        if G.valuation % G.denom:
            raise ValueError("theta-convention operator needs integral exponents")
        G = G.with_denom(1)
    get = _lookup(G)
    psi_p = psi(p)
    mid = kronecker(-1, p) ** (lam % 2) * psi_p * _ppow(p, lam - 1)
    low = psi_p * psi_p * p ** (2 * lam - 1)
    p2 = p * p
    start, count = _image_range(G, p2)
    out = []
    for i in range(count):
        n = start + i
        val = get(p2 * n)
        sym = kronecker(n, p)
        if sym:
            val += mid * sym * get(n)
        if n % p2 == 0:
            val += low * get(n // p2)
        out.append(val)
    return _build(G, start, count, out)


def t_p_integral(f, p, k, chi):
    """T_p = U_p + chi(p) p^{k-1} V_p: b(n) -> b(pn) + chi(p) p^{k-1} b(n/p)."""
    _check_prime(p)
    if f.denom != 1:
        if f.valuation % f.denom:
            raise ValueError("T_p needs integral exponents")
        f = f.with_denom(1)
    get = _lookup(f)
    w = chi(p) * p ** (k - 1)
    start, count = _image_range(f, p)
    out = []
    for i in range(count):
        n = start + i
        val = get(p * n)
        if w and n % p == 0:
            val += w * get(n // p)
        out.append(val)
    return _build(f, start, count, out)


@dataclass
class EigenReport:
    passed: bool
    checked: int
    first_violation: tuple | None = None
    detail: str = ""

    def __bool__(self):
        return self.passed


def al_eigen_check(f, p, k, epsilon):
    """Check b(pn) = -epsilon p^{k/2-1} b(n) for every n with pn known."""
    if p not in (2, 3):
        raise ValueError("Atkin-Lehner relations are checked at p = 2, 3")
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")
    if f.denom != 1:
        f = f.with_denom(1)
    get = _lookup(f)
    if isinstance(f, ModSeries):
        factor = -epsilon * pow(p, k // 2 - 1, f.modulus)
    else:
        factor = -epsilon * p ** (k // 2 - 1)
    last = f.last_numerator() // p
    checked = 0
    for n in range(max(f.valuation, 1), last + 1):
        lhs, rhs = get(p * n), factor * get(n)
        if isinstance(f, ModSeries):
            lhs, rhs = lhs % f.modulus, rhs % f.modulus
        checked += 1
        if lhs != rhs:
            return EigenReport(False, checked, (n, lhs, rhs),
                               f"b({p * n}) = {lhs} but expected {rhs}")
    return EigenReport(True, checked)
