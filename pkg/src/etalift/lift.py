"""Shimura-type lifts of eta-multiplier forms, the classical lift of theta
multiplier forms, and coefficient checks relating them to Hecke operators."""

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

import numpy as np

from .arith import EpsilonPair, RealCharacter, atkin_lehner_signs, is_squarefree, kronecker
from .hecke import HalfIntegralMeta, _lookup, al_eigen_check, t_p2_eta, t_p_integral
from .qseries import FracSeries, ModSeries


@dataclass
class LiftResult:
    coeffs: object  # FracSeries or ModSeries starting at q^1
    target_weight: int
    target_level: int
    eps: EpsilonPair | None
    source_meta: HalfIntegralMeta
    t: int
    wrong_class: bool = False

    @property
    def precision(self):
        return self.coeffs.precision

    def b(self, n):
        return self.coeffs.coeff(n)

    def newness_checks(self):
        """U_p relations at 2 (and 3 when defined) from the Atkin-Lehner signs."""
        out = {}
        if self.eps is None:
            return out
        out[2] = al_eigen_check(self.coeffs, 2, self.target_weight, self.eps.eps2)
        if self.eps.eps3 is not None:
            out[3] = al_eigen_check(self.coeffs, 3, self.target_weight, self.eps.eps3)
        return out


def _signs(meta):
    try:
        return atkin_lehner_signs(meta.r, meta.psi)
    except ValueError:
        return None


def _dirichlet(weights, A, nmax, M=None):
    """b(n) = sum_{jk = n} weights[j] A[k] for 1 <= n <= nmax (index 0 unused)."""
    b = [0] * (nmax + 1)
    for k in range(1, nmax + 1):
        a = A[k]
        if not a:
            continue
        for j in range(1, nmax // k + 1):
            w = weights[j]
            if w:
                b[j * k] += w * a
    if M is not None:
        b = [x % M for x in b]
    return b[1:]


def _series_out(F, values):
    if isinstance(F, ModSeries):
        return ModSeries(np.array(values, dtype=np.int64), F.modulus, 1, 1)
    return FracSeries(values, 1, 1)


def _jpow(j, e, M):
    if M is not None:
        return pow(j, e, M) if e >= 0 else pow(pow(j, -1, M), -e, M)
    return j ** e if e >= 0 else Fraction(1, j ** -e)


def lift_length(F, t):
    """Number of lift coefficients computable: largest n with t n^2 known."""
    last = F.last_numerator()
    return isqrt(last // t) if last >= t else 0


def terms_needed(meta, t, nmax, p=1):
    """Input terms (over ``meta.denom``) giving nmax lift coefficients after T_{p^2}."""
    top = t * p * p * nmax * nmax + p * p * meta.denom  # slack for coset rounding
    return max((top - meta.residue) // meta.denom + 1, 1)


def shimura_lift(meta, F, t, nmax=None):
    """S_t(F): b(n) = sum_{jk=n} psi(j) (j/t) j^{lam-1} chi(k) a(t k^2).

    F is normalized to ``meta.denom``; a(m) denotes the coefficient at the
    numerator m.  When t is off the residue class the lift is identically zero
    and ``wrong_class`` is set.
    """
    if t < 1 or not is_squarefree(t):
        raise ValueError("t must be a squarefree positive integer")
    F = meta.normalize(F)
    M = F.modulus
    avail = lift_length(F, t)
    nmax = avail if nmax is None else nmax
    if nmax > avail:
        raise ValueError(f"only {avail} lift coefficients are determined by the input")
    res = LiftResult(None, 2 * meta.lam, meta.target_level, _signs(meta), meta, t)
    if t % meta.denom != meta.residue:
        res.coeffs = _series_out(F, [0] * nmax)
        res.wrong_class = True
        return res
    get = _lookup(F)
    chi = meta.chi_lift
    A = [0] + [chi(k) * get(t * k * k) if chi(k) else 0 for k in range(1, nmax + 1)]
    weights = [0] * (nmax + 1)
    for j in range(1, nmax + 1):
        s = meta.psi(j) * kronecker(j, t)
        if s:
            weights[j] = s * _jpow(j, meta.lam - 1, M)
    res.coeffs = _series_out(F, _dirichlet(weights, A, nmax, M))
    return res


def classical_shimura_lift(G, t, lam, psi, nmax=None):
    """Sh_t(G): c(n) = sum_{jk=n} psi(j) (-1/j)^lam (t/j) j^{lam-1} a(t k^2)."""
    if t < 1 or not is_squarefree(t):
        raise ValueError("t must be a squarefree positive integer")
    if G.denom != 1:
        if G.valuation % G.denom:
            raise ValueError("classical lift needs integral exponents")
        G = G.with_denom(1)
    M = G.modulus
    avail = lift_length(G, t)
    nmax = avail if nmax is None else nmax
    if nmax > avail:
        raise ValueError(f"only {avail} lift coefficients are determined by the input")
    get = _lookup(G)
    A = [0] + [get(t * k * k) for k in range(1, nmax + 1)]
    weights = [0] * (nmax + 1)
    for j in range(1, nmax + 1):
        s = psi(j) * kronecker(-1, j) ** (lam % 2) * kronecker(t, j)
        if s:
            weights[j] = s * _jpow(j, lam - 1, M)
    return _series_out(G, _dirichlet(weights, A, nmax, M))


def theta_character(meta):
    """psi' with F|V_24 (or F|V_8) in S_{lam+1/2}(576N or 64N, psi' nu_theta^{2lam+1})."""
    from .multipliers import psi_prime

    return psi_prime(meta.r, meta.lam, meta.psi)


def to_theta_convention(meta, F):
    """F|V_24 (or F|V_8) over integral exponents."""
    from .qseries import v_operator

    F = meta.normalize(F)
    return v_operator(F, meta.denom).with_denom(1)


def compare_lifts(meta, F, t, P=None):
    """max_n |c(n) - chi(n) b(n)| between Sh_t(F|V) and S_t(F)."""
    b = shimura_lift(meta, F, t, P).coeffs
    G = to_theta_convention(meta, F)
    c = classical_shimura_lift(G, t, meta.lam, theta_character(meta), b.precision)
    chi = meta.chi_lift
    worst = 0
    for n in range(1, b.precision + 1):
        worst = max(worst, abs(c.coeff(n) - chi(n) * b.coeff(n)))
    return worst


@dataclass
class CheckReport:
    passed: bool
    compared: int
    detail: str = ""
    extra: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed


def _first_diff(x, y, n_terms):
    for n in range(1, n_terms + 1):
        if x.coeff(n) != y.coeff(n):
            return n, x.coeff(n), y.coeff(n)
    return None


def equivariance_check(meta, F, t, p, nmax=None):
    """S_t(T_{p^2} F) = chi(p) T_p S_t(F), T_p with character psi^2 at the target level."""
    lhs = shimura_lift(meta, t_p2_eta(meta, F, p), t).coeffs
    base = shimura_lift(meta, F, t).coeffs
    psi2 = RealCharacter(meta.target_level, 1)  # psi^2 is principal
    rhs = t_p_integral(base, p, 2 * meta.lam, psi2) * meta.chi_lift(p)
    n = min(lhs.precision, rhs.last_numerator())
    if nmax is not None:
        if nmax > n:
            raise ValueError(f"only {n} coefficients are comparable")
        n = nmax
    diff = _first_diff(lhs, rhs, n)
    if diff:
        return CheckReport(False, n, f"mismatch at n={diff[0]}: {diff[1]} vs {diff[2]}")
    return CheckReport(True, n)


def eigen_relation_check(meta, F, newform_coeffs, primes):
    """T_{p^2} F = chi(p) a(p) F for each p, where a(n) = newform_coeffs[n-1]."""
    F = meta.normalize(F)
    out = {}
    for p in primes:
        factor = meta.chi_lift(p) * newform_coeffs[p - 1]
        T = t_p2_eta(meta, F, p)
        expect = F * factor
        d = T - expect
        ok = d.is_zero()
        out[p] = CheckReport(ok, d.precision, "" if ok else f"T_{p}^2 F != {factor} F",
                             {"factor": factor})
    return out


def proportionality(lift_coeffs, target, nmax):
    """Constant c with lift = c * target on n <= nmax, or None."""
    c = Fraction(lift_coeffs.coeff(1), target[0])
    for n in range(1, nmax + 1):
        if lift_coeffs.coeff(n) != c * target[n - 1]:
            return None
    return c


def is_multiplicative(coeffs, nmax):
    """b(mn) = b(m) b(n) b(1)^{-1} for coprime m, n with mn <= nmax."""
    from math import gcd

    b1 = coeffs.coeff(1)
    if not b1:
        return False
    for m in range(2, nmax + 1):
        for n in range(m + 1, nmax // m + 1):
            if gcd(m, n) == 1 and coeffs.coeff(m * n) * b1 != coeffs.coeff(m) * coeffs.coeff(n):
                return False
    return True
