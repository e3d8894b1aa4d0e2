"""The twelve acceptance criteria as runnable checks.

Each ``criterion_N`` returns a CriterionResult; the CLI and the test-suite both
call them.  Oracles used here are written independently of the code they check.
"""

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import arith
from .arith import Root24, epsilon_d, kronecker
from .examples import EXAMPLES, ETA5, F13_LIFT, F13_TILDE, F13_TILDE_LEAD, G6_PRINTED
from .forms import (cphi_series, expand_eta_quotient, fit_A5, partition_numbers, rm_counts,
                    theta_series)
from .frobenius import (CPHI_BOUND, build_Fl, build_tilde_F13, cphi5_mod, congex_check,
                        f13_decomposition_on_printed, flcong_crosscheck, lift_tilde_F13,
                        q_table, ramanujan_scan, recover_g6_mod13, scan_congruence)
from .hecke import t_p2_eta, t_p2_theta
from .lift import (compare_lifts, eigen_relation_check, equivariance_check, is_multiplicative,
                   proportionality, shimura_lift, terms_needed, to_theta_convention,
                   theta_character)
from .multipliers import (check_nu_v_t, make_rng, nu_eta, nu_theta, random_gamma0,
                          verify_transform_numeric)
from .qseries import FracSeries, eta_series, reduce_mod

TABLE_PLUS = [103, 109, 283, 727, 769, 809, 991, 1063, 1223, 1231, 1259, 1291, 1307, 1367,
              1409, 1543, 1733, 1789, 1831, 1861]
TABLE_MINUS = [97, 191, 241, 251, 397, 409, 439, 463, 751, 823, 839, 1229, 1277, 1321, 1361,
               1621, 1657, 1933, 1979, 1993]


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool = True
    details: list = field(default_factory=list)
    seconds: float = 0.0
    limit: float | None = None

    def check(self, ok, text):
        self.details.append(("ok" if ok else "FAIL") + ": " + text)
        self.passed &= bool(ok)
        return ok

    def line(self):
        t = f"{self.seconds:.1f}s" + (f" (limit {self.limit:.0f}s)" if self.limit else "")
        return f"criterion {self.number:2d} {'PASS' if self.passed else 'FAIL'}  {self.title}  [{t}]"


def _timed(number, title, limit=None):
    def wrap(fn):
        def run(seed=0):
            res = CriterionResult(number, title, limit=limit)
            t0 = time.perf_counter()
            fn(res, seed)
            res.seconds = time.perf_counter() - t0
            if limit is not None:
                res.check(res.seconds < limit, f"runtime {res.seconds:.1f}s < {limit}s")
            return res

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return wrap


# ---------------------------------------------------------------- 1

def _epsilon_identities(bound=999):
    """e((1-d)/8) = (2/d) eps_d and the product rule for eps, odd |d| <= bound."""
    ds = [d for d in range(-bound, bound + 1) if d % 2]
    eps = {d: epsilon_d(d).exponent for d in ds}
    for d in ds:
        if Root24(3 * (1 - d)) != Root24.from_sign(kronecker(2, d)) * epsilon_d(d):
            return False, f"e((1-d)/8) fails at d={d}"
    for d1 in ds:
        e1 = eps[d1]
        for d2 in ds:
            sign = 12 * (((d1 - 1) * (d2 - 1) // 4) % 2)
            if (e1 + eps[d2] + sign) % 24 != epsilon_d(d1 * d2).exponent:
                return False, f"product rule fails at ({d1}, {d2})"
    return True, f"{len(ds)} values, {len(ds) ** 2} pairs"


@_timed(1, "multiplier identities", limit=30)
def criterion_1(res, seed):
    rng = make_rng(seed)
    mats = [random_gamma0(1, rng, kmax=50, dmax=200, c_positive=False) for _ in range(1000)]
    res.check(all(nu_eta(g) ** 24 == Root24(0) for g in mats), "nu^24 = 1 on 1000 matrices")
    res.check(all(nu_eta(-g) == Root24(6) * nu_eta(g) for g in mats if g.c > 0)
              and all(nu_eta(g) == Root24(6) * nu_eta(-g) for g in mats if g.c < 0),
              "nu(-g) = i nu(g) on 1000 matrices")
    P = 3000
    eta = eta_series(P)
    cases = [("eta", eta, Fraction(1, 2), 1, lambda g: nu_eta(g)),
             ("eta^3", eta ** 3, Fraction(3, 2), 1, lambda g: nu_eta(g) ** 3),
             ("eta^5", eta ** 5, Fraction(5, 2), 1, lambda g: nu_eta(g) ** 5),
             ("theta", theta_series(4 * P), Fraction(1, 2), 4, nu_theta)]
    for name, F, w, N, mult in cases:
        worst = 0.0
        for _ in range(100):
            g = random_gamma0(N, rng, kmax=50 // N, dmax=50)
            worst = max(worst, verify_transform_numeric(F, w, g, mult(g)))
        res.check(worst < 1e-9, f"{name}: worst residual {worst:.2e} over 100 matrices")
    for r, t in ((1, 5), (9, 7), (13, 11)):
        ok = all(check_nu_v_t(random_gamma0(t, rng), r, t) for _ in range(500))
        res.check(ok, f"nu^r V_t identity, (r, t) = ({r}, {t}), 500 samples")
    ok, text = _epsilon_identities()
    res.check(ok, "epsilon identities: " + text)


# ---------------------------------------------------------------- 2

@_timed(2, "printed expansions")
def criterion_2(res, seed):
    e5 = eta_series(5) ** 5
    res.check(list(e5.coeffs) == [1, -5, 5, 10, -15] and e5.valuation == 5,
              "eta^5 = q^(5/24) (1 - 5q + 5q^2 + 10q^3 - 15q^4)")
    f1 = expand_eta_quotient("1^2 2^2 3^2 6^2", 6)
    res.check(list(f1.coeffs) == EXAMPLES[1].newform, "Example 1 newform, 6 terms")
    f2 = expand_eta_quotient("1 2 7 14", 7)
    res.check(list(f2.coeffs) == EXAMPLES[2].newform, "Example 2 newform, 7 terms")
    for n in (3, 4):
        ex = EXAMPLES[n]
        for form in ex.forms:
            b = shimura_lift(form.meta, form.series_for_lift(7), form.t, 7).coeffs
            norm = [Fraction(b.coeff(k), b.coeff(1)) for k in range(1, 8)]
            res.check(norm == ex.newform, f"Example {n} newform from S_{form.t}({form.name})")
    Ft = build_tilde_F13(3)
    res.check(list(Ft.coeffs) == F13_TILDE_LEAD and Ft.valuation == 7, "F~13 leading terms")
    L = lift_tilde_F13(5).coeffs
    res.check(list(L.coeffs) == F13_LIFT, "S_7(F~13), 5 terms")
    g6 = recover_g6_mod13(5)
    res.check([int(x) for x in g6.coeffs] == [x % 13 for x in G6_PRINTED],
              "g6 printed terms mod 13")
    ok, _ = f13_decomposition_on_printed()
    res.check(ok, "rational g6/g30 decomposition on the printed terms")


# ---------------------------------------------------------------- 3

@_timed(3, "lift identities")
def criterion_3(res, seed):
    N = 200
    f1 = expand_eta_quotient("1^2 2^2 3^2 6^2", N + 1)
    b = shimura_lift(ETA5.meta, ETA5.series_for_lift(N), 5, N).coeffs
    res.check((b - f1).is_zero() and b.precision == N, "S_5(eta^5) = eta^2 eta^2(2z) eta^2(3z) eta^2(6z)")
    F1 = EXAMPLES[2].forms[0]
    f2 = expand_eta_quotient("1 2 7 14", N + 1)
    b = shimura_lift(F1.meta, F1.series_for_lift(N), 3, N).coeffs
    res.check((b - f2).is_zero() and b.precision == N, "S_3(eta(7z) eta^2) = Example 2 newform")
    for n in (3, 4):
        ex = EXAMPLES[n]
        for form in ex.forms:
            b = shimura_lift(form.meta, form.series_for_lift(N), form.t, N).coeffs
            c = proportionality(b, ex.newform, len(ex.newform))
            res.check(c is not None and is_multiplicative(b, N),
                      f"Example {n}: S_{form.t}({form.name}) = {c} f, multiplicative to {N}")
    res.check(shimura_lift(ETA5.meta, ETA5.series(200), 1).coeffs.is_zero(), "S_1(eta^5) = 0")


# ---------------------------------------------------------------- 4

def random_supported(meta, P, rng, bound=50):
    """Random exact series on the residue class of ``meta``."""
    return FracSeries([rng.randint(-bound, bound) for _ in range(P)], meta.residue, meta.denom)


def commutator_is_zero(meta, p, q, rng, out_terms=20):
    """[T_{p^2}, T_{q^2}] on a random supported series, exactly."""
    P = terms_needed(meta, 1, 1) + (p * q) ** 2 * (out_terms + 1)
    F = random_supported(meta, P, rng)
    a = t_p2_eta(meta, t_p2_eta(meta, F, q), p)
    b = t_p2_eta(meta, t_p2_eta(meta, F, p), q)
    d = a - b
    return d.is_zero() and d.precision >= out_terms, d.precision


EQUIVARIANCE_CASES = [  # (example, form index, t, p, terms)
    (1, 0, 5, 5, 100), (1, 0, 5, 7, 100), (2, 0, 3, 3, 100), (2, 0, 3, 5, 100),
    (2, 1, 5, 3, 100), (3, 0, 5, 3, 100), (3, 1, 1, 3, 100), (4, 0, 13, 5, 100),
]


@_timed(4, "Hecke layer")
def criterion_4(res, seed):
    rng = random.Random(seed)
    meta5 = ETA5.meta
    F = ETA5.series(50 * 49 + 1)
    res.check((t_p2_eta(meta5, F, 5) - F * -6).is_zero(), "T_25 eta^5 = -6 eta^5")
    for form in EXAMPLES[2].forms:
        F = form.series(50 * 49 + 1)
        rels = eigen_relation_check(form.meta, F, EXAMPLES[2].newform, (3, 5, 7))
        for p, rep in rels.items():
            res.check(rep.passed and rep.compared >= 50,
                      f"{form.name}: T_{p * p} F = {rep.extra['factor']} F ({rep.compared} terms)")
    for n, i, t, p, terms in EQUIVARIANCE_CASES:
        form = EXAMPLES[n].forms[i]
        F = form.series(terms_needed(form.meta, t, terms, p))
        rep = equivariance_check(form.meta, F, t, p, terms)
        res.check(rep.passed, f"equivariance ({form.name}, t={t}, p={p}) to {terms} terms")
    F = F13_TILDE.series(terms_needed(F13_TILDE.meta, 7, 20, 11))
    rep = equivariance_check(F13_TILDE.meta, F, 7, 11, 20)
    res.check(rep.passed, "equivariance (F~13, t=7, p=11) to 20 terms")
    for p, q in ((5, 7), (7, 11), (5, 13)):
        ok, n = commutator_is_zero(meta5, p, q, rng)
        res.check(ok, f"[T_{p * p}, T_{q * q}] = 0 on a random series ({n} terms)")
    G0 = eta_series(3000) ** 5
    for p in (5, 7):
        lhs = to_theta_convention(meta5, t_p2_eta(meta5, G0, p))
        rhs = t_p2_theta(2, 576, theta_character(meta5), to_theta_convention(meta5, G0), p)
        d = lhs - rhs
        res.check(d.is_zero() and d.precision > 100, f"(T_{p * p} eta^5)|V_24 = T^s_{p * p}(eta^5|V_24)")


# ---------------------------------------------------------------- 5

def _all_lifts(nmax=200):
    out = []
    for n, ex in EXAMPLES.items():
        for form in ex.forms:
            out.append((form.name, shimura_lift(form.meta, form.series_for_lift(nmax), form.t, nmax)))
    out.append((F13_TILDE.name, lift_tilde_F13(60)))
    return out


@_timed(5, "Atkin-Lehner relations on every lift")
def criterion_5(res, seed):
    for name, lift in _all_lifts():
        checks = lift.newness_checks()
        res.check(bool(checks) and all(checks.values()),
                  f"{name}: " + ", ".join(f"U_{p} eps={lift.eps.for_prime(p)} over {c.checked}"
                                          for p, c in checks.items()))
    L = lift_tilde_F13(5)
    res.check(L.eps.eps2 == 1 and L.eps.eps3 == -1 and L.b(2) == -16 * L.b(1)
              and L.b(3) == 81 * L.b(1), "F~13 lift: b(2) = -16 b(1), b(3) = 81 b(1)")


# ---------------------------------------------------------------- 6

@_timed(6, "classical lift comparison")
def criterion_6(res, seed):
    for ex in EXAMPLES.values():
        for form in ex.forms:
            d = compare_lifts(form.meta, form.series_for_lift(100), form.t, 100)
            res.check(d == 0, f"{form.name}: max |c(n) - chi(n) b(n)| = {d} over 100 terms")
    F = F13_TILDE.series_for_lift(100)
    d = compare_lifts(F13_TILDE.meta, F, 7, 100)
    res.check(d == 0, f"{F13_TILDE.name}: max difference {d} over 100 terms")


# ---------------------------------------------------------------- 7

@_timed(7, "F_l modulo l", limit=120)
def criterion_7(res, seed):
    P = 500
    for ell in (7, 11, 13):
        F = build_Fl(ell, P)
        if ell == 13:
            Ft = reduce_mod(build_tilde_F13(P), 13)
            res.check(F == Ft, f"F_13 = F~13 mod 13 to {P} terms")
        else:
            res.check(F.is_zero() and F.precision == P, f"F_{ell} = 0 mod {ell} to {P} terms")
        cc = flcong_crosscheck(ell, P, F)
        res.check(cc.passed and cc.compared == P,
                  f"F_{ell} coefficients = cphi_5((l n + 5)/24) mod {ell}, {cc.compared} terms")


# ---------------------------------------------------------------- 8

@_timed(8, "closed form of A_5", limit=60)
def criterion_8(res, seed):
    A, rep = fit_A5(P_out=10 ** 6, modulus=13, validate_to=10 ** 4)
    res.check(rep.n_validated == 10 ** 4, rep.describe())
    brute = rm_counts(5, 200)
    exact, _ = fit_A5(P_out=201)
    res.check(list(exact.coeffs) == brute.tolist(), "exact fit equals lattice counts to 200")
    res.check(A.precision == 10 ** 6 and all(int(A.coeffs[n]) == brute[n] % 13 for n in range(201)),
              "10^6 terms mod 13 emitted")


# ---------------------------------------------------------------- 9

@_timed(9, "cphi consistency")
def criterion_9(res, seed):
    c1 = cphi_series(1, 1001)
    res.check(list(c1.coeffs) == partition_numbers(1000), "cphi_1(n) = p(n), n <= 1000")
    for ell in (7, 11):
        rep = ramanujan_scan(ell, 10 ** 5)
        res.check(rep.passed and rep.n_checked == 10 ** 5 + 1,
                  f"cphi_5({ell}n + {rep.shift}) = 0 mod {ell}, n <= 10^5")


# ---------------------------------------------------------------- 10

@_timed(10, "table of primes Q < 2000")
def criterion_10(res, seed):
    rows = q_table(2000)
    res.check(rows[1] == TABLE_PLUS, f"eps_Q = +1 row ({len(rows[1])} primes)")
    res.check(rows[-1] == TABLE_MINUS, f"eps_Q = -1 row ({len(rows[-1])} primes)")


# ---------------------------------------------------------------- 11

@_timed(11, "direct congruence scans", limit=300)
def criterion_11(res, seed):
    cp = cphi5_mod(13, CPHI_BOUND + 1)
    for Q, eps in ((97, -1), (103, 1)):
        rep = scan_congruence(Q, eps, cphi=cp)
        res.check(rep.passed and rep.n_checked > 0,
                  f"Q={Q}, eps={eps}: {rep.n_checked} arguments up to {rep.max_argument}, "
                  f"{len(rep.violations)} violations")
        inv = scan_congruence(Q, -eps, cphi=cp)
        res.check(len(inv.violations) >= 1, f"Q={Q}, inverted eps: {len(inv.violations)} violations")
    cx = congex_check(cphi=cp)
    res.check(cx.passed, f"cphi_5({cx.arguments[0]}) = 0 mod 13, n0 = {cx.n0}")


# ---------------------------------------------------------------- 12

def suitable_brute(k, ell):
    """Direct transcription of the four suitability conditions."""
    if not k <= ell - 1:
        return False
    x = 1
    for _ in range(k - 1):
        x = x * 2 % ell
    half = next(h for h in range(ell) if 2 * h % ell == 1)
    if x == 2 % ell or x == half:
        return False
    if 2 * k in (ell + 1, ell + 3):
        return False
    g1 = max(d for d in range(1, k) if (ell + 1) % d == 0 and (k - 1) % d == 0) if k > 1 else ell + 1
    g2 = max(d for d in range(1, k) if (ell - 1) % d == 0 and (k - 1) % d == 0) if k > 1 else ell - 1
    return (ell + 1) // g1 >= 6 and (ell - 1) // g2 >= 6


@_timed(12, "numeric predicates")
def criterion_12(res, seed):
    primes = [p for p in range(5, 301) if all(p % q for q in range(2, p))]
    bad = [(k, ell) for ell in primes for k in range(2, 41, 2)
           if arith.is_suitable_numeric(k, ell) != suitable_brute(k, ell)]
    res.check(not bad, f"suitability on k <= 40, l <= 300 ({len(primes) * 20} pairs), mismatches {bad[:5]}")
    frac, count = arith.hasse_density(10 ** 6)
    res.check(abs(frac - 17 / 24) < 0.01, f"Hasse density {frac:.5f} over {count} primes, 17/24 = {17 / 24:.5f}")


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 13)}


def run(numbers=None, seed=0):
    return [CRITERIA[i](seed) for i in (numbers or sorted(CRITERIA))]
