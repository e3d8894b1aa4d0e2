"""Congruences for 5-colored Frobenius partitions: the forms F_l modulo l,
the weight 11/2 form F~13, recovery of the level 6 newform modulo 13 from its
lift, the classification of primes Q and direct scans of cphi_5 modulo 13."""

import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .arith import is_prime, kronecker, primes_up_to
from .examples import F13_LIFT, F13_TILDE, G6_PRINTED
from .forms import EtaQuotient, cphi_series, delta_power_mod, expand_eta_quotient, fit_A5
from .lift import shimura_lift, terms_needed
from .qseries import ModSeries, u_operator

SUPPORTED_ELL = (7, 11, 13)
CPHI_BOUND = 2 * 10 ** 6  # default largest cphi_5 argument in the scans
CPHI_MAX = 1 << 22  # longest cphi_5 series one transform can produce


def build_tilde_F13(P, modulus=None):
    """6 eta^12/eta(5z) + 7 eta^5(5z) eta^6 + 9 eta^11(5z), P terms over 1/24."""
    if P < 3:
        raise ValueError("need at least 3 terms")
    return F13_TILDE.series(P, modulus).with_denom(24)


def delta_exponent(ell):
    return 5 * (ell * ell - 1) // 24


def build_Fl(ell, P):
    """eta^{-5l} U_l(Delta^{5(l^2-1)/24} A_5) mod l with P terms.

    T_l and U_l agree modulo l on weight k >= 2 since l | l^{k-1}.
    """
    if ell not in SUPPORTED_ELL:
        raise ValueError(f"ell must be one of {SUPPORTED_ELL}")
    e = delta_exponent(ell)
    m0 = -(-e // ell)
    top = ell * (m0 + P - 1)  # largest exponent needed before U_l
    N = top - e + 1
    A5, _ = fit_A5(P_out=N, modulus=ell)
    X = delta_power_mod(e, ell, N) * A5
    U = u_operator(X, ell)
    U = U.truncate(P)
    inv = expand_eta_quotient(EtaQuotient(((1, -5 * ell),)), P, ell)
    return (U.with_denom(24) * inv).truncate(P)


@dataclass
class CrossCheck:
    ell: int
    compared: int
    mismatches: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.mismatches and self.compared > 0

    def __bool__(self):
        return self.passed


def flcong_crosscheck(ell, P, F=None):
    """Coefficient of q^{n/24} in F_l against cphi_5((l n + 5)/24) mod l."""
    F = build_Fl(ell, P) if F is None else F
    last = F.last_numerator()
    cp = cphi_series(5, (ell * last + 5) // 24 + 1, ell)
    out = CrossCheck(ell, 0)
    for i in range(F.precision):
        n = F.valuation + 24 * i
        arg, rem = divmod(ell * n + 5, 24)
        if rem or arg < 0:
            raise ArithmeticError("F_l exponents must satisfy 24 | l n + 5")
        out.compared += 1
        a, b = int(F.coeffs[i]), int(cp.coeffs[arg])
        if a != b:
            out.mismatches.append((n, a, b))
    return out


# ---------------------------------------------------------------- g_6 mod 13

def lift_tilde_F13(nmax, modulus=None):
    meta = F13_TILDE.meta
    F = F13_TILDE.series(terms_needed(meta, F13_TILDE.t, nmax), modulus)
    return shimura_lift(meta, F, F13_TILDE.t, nmax)


def recover_g6_mod13(P, lift=None):
    """c(n) = 6^{-1} (b(n) - 4 c(n/5)) mod 13, from S_7(F~13) = 6 g6 + 4 g6|V5."""
    b = lift_tilde_F13(P, 13).coeffs if lift is None else lift
    inv6 = pow(6, -1, 13)
    c = [0] * (P + 1)
    for n in range(1, P + 1):
        prev = c[n // 5] if n % 5 == 0 else 0
        c[n] = inv6 * (int(b.coeff(n)) - 4 * prev) % 13
    return ModSeries(np.array(c[1:], dtype=np.int64), 13, 1, 1)


def f13_decomposition_on_printed(g30_printed=(1, -16, 81, 256, -625)):
    """The rational decomposition of S_7(F~13) checked on the printed segments."""
    g6 = G6_PRINTED
    a, b, c = Fraction(2221, 537), Fraction(-3544837, 537), Fraction(1001, 537)
    out = []
    for n in range(1, len(F13_LIFT) + 1):
        v = a * g6[n - 1] + c * g30_printed[n - 1]
        if n % 5 == 0:
            v += b * g6[n // 5 - 1]
        out.append(v)
    return out == F13_LIFT, out


def classify_Q(Q, g6):
    """epsilon_Q = beta_Q (-5/Q) when T_Q g6 = beta_Q Q^4 g6 mod 13, else None."""
    if not is_prime(Q) or Q <= 3 or Q in (5, 13):
        raise ValueError("Q must be a prime > 3 other than 5 and 13")
    a = int(g6.coeff(Q)) % 13
    q4 = pow(Q, 4, 13)
    if a == q4:
        beta = 1
    elif a == (-q4) % 13:
        beta = -1
    else:
        return None
    return beta * kronecker(-5, Q)


def q_table(lmax=2000, g6=None):
    """{+1: [Q...], -1: [Q...], None: [Q...]} over primes 3 < Q < lmax."""
    g6 = recover_g6_mod13(lmax) if g6 is None else g6
    rows = {1: [], -1: [], None: []}
    for Q in primes_up_to(lmax - 1).tolist():
        if Q <= 3 or Q in (5, 13):
            continue
        rows[classify_Q(Q, g6)].append(Q)
    return rows


# ---------------------------------------------------------------- scans

@dataclass
class CongruenceReport:
    ell: int
    Q: int
    eps_Q: int
    n_checked: int = 0
    violations: list = field(default_factory=list)  # (n, argument, residue)
    seconds: float = 0.0
    max_argument: int = 0

    @property
    def passed(self):
        return not self.violations

    def to_csv(self):
        head = "ell,Q,eps_Q,n_checked,violations,max_argument,status"
        row = (f"{self.ell},{self.Q},{self.eps_Q},{self.n_checked},{len(self.violations)},"
               f"{self.max_argument},{'pass' if self.passed else 'fail'}")
        lines = [head, row]
        if self.violations:
            lines.append("n,argument,residue")
            lines += [f"{n},{a},{r}" for n, a, r in self.violations]
        return "\n".join(lines) + "\n"


def cphi5_mod(ell, length):
    return cphi_series(5, length, ell)


def scan_congruence(Q, eps_Q, n_max=None, ell=13, cphi=None, bound=CPHI_BOUND):
    """cphi_5((l Q^2 n + 5)/24) = 0 mod l whenever (n/Q) = eps_Q and 24 | l Q^2 n + 5."""
    t0 = time.perf_counter()
    step = ell * Q * Q
    if n_max is None:
        n_max = (24 * bound - 5) // step
    top = (step * n_max + 5) // 24
    if cphi is None:
        if top >= CPHI_MAX:
            raise ValueError(f"n_max = {n_max} needs cphi_5 up to {top}; "
                             f"at most {CPHI_MAX - 1} is supported")
        cphi = cphi5_mod(ell, top + 1)
    if cphi.precision <= top:
        raise ValueError(f"cphi_5 is known to {cphi.precision - 1}, scan needs {top}")
    rep = CongruenceReport(ell, Q, eps_Q)
    n = np.arange(0, n_max + 1, dtype=np.int64)
    n = n[(step * n + 5) % 24 == 0]
    legendre = np.array([kronecker(int(x), Q) for x in n], dtype=np.int64)
    n = n[legendre == eps_Q]
    args = (step * n + 5) // 24
    res = cphi.coeffs[args]
    rep.n_checked = len(n)
    rep.max_argument = int(args.max()) if len(args) else 0
    bad = np.nonzero(res)[0]
    rep.violations = [(int(n[i]), int(args[i]), int(res[i])) for i in bad]
    rep.seconds = time.perf_counter() - t0
    return rep


@dataclass
class ProgressionReport:
    ell: int
    modulus: int
    shift: int
    n_checked: int
    violations: list

    @property
    def passed(self):
        return not self.violations


def ramanujan_scan(ell, n_max, shift=None, cphi=None):
    """cphi_5(l n + shift) mod l for n <= n_max; shift defaults to 4 (l=7) or 8 (l=11)."""
    default = {7: 4, 11: 8}
    if shift is None:
        if ell not in default:
            raise ValueError("ell must be 7 or 11")
        shift = default[ell]
    top = ell * n_max + shift
    cphi = cphi5_mod(ell, top + 1) if cphi is None else cphi
    vals = cphi.coeffs[shift: top + 1: ell]
    bad = np.nonzero(vals)[0]
    return ProgressionReport(ell, ell, shift, len(vals),
                             [(int(i), int(ell * i + shift), int(vals[i])) for i in bad[:20]])


CONGEX_Q = 97
CONGEX_BETA = 1014212


@dataclass
class CongexReport:
    n0: int
    legendre: int
    arguments: list
    residues: list
    consistent: bool

    @property
    def passed(self):
        return self.consistent and self.legendre == -1 and all(r == 0 for r in self.residues)


def congex_check(n_values=(0,), cphi=None):
    """cphi_5(13 * 97^3 n + 1014212) = 0 mod 13, as a sub-progression of the Q = 97 scan."""
    Q, ell = CONGEX_Q, 13
    step = ell * Q * Q
    num = 24 * CONGEX_BETA - 5
    n0, rem = divmod(num, step)
    consistent = rem == 0
    # (13 Q^2 (n0 + 24 Q n) + 5)/24 = 13 Q^3 n + beta
    consistent &= all((step * (n0 + 24 * Q * n) + 5) == 24 * (ell * Q ** 3 * n + CONGEX_BETA)
                      for n in n_values)
    args = [ell * Q ** 3 * n + CONGEX_BETA for n in n_values]
    if cphi is None:
        cphi = cphi5_mod(ell, max(args) + 1)
    residues = [int(cphi.coeffs[a]) for a in args]
    return CongexReport(n0, kronecker(n0, Q), args, residues, consistent)
