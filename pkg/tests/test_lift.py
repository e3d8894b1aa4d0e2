from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from etalift.arith import RealCharacter, kronecker
from etalift.examples import EXAMPLES, F13_LIFT, F13_TILDE
from etalift.forms import expand_eta_quotient
from etalift.hecke import HalfIntegralMeta, t_p2_eta, t_p_integral
from etalift.lift import (classical_shimura_lift, compare_lifts, eigen_relation_check,
                          equivariance_check, is_multiplicative, lift_length, proportionality,
                          shimura_lift, terms_needed, theta_character, to_theta_convention)
from etalift.qseries import FracSeries, reduce_mod, twist, v_operator

ETA5 = EXAMPLES[1].forms[0]
EX2_F1, EX2_F2 = EXAMPLES[2].forms
EX3_F1 = EXAMPLES[3].forms[0]
EX4_F1 = EXAMPLES[4].forms[0]
F6 = expand_eta_quotient("1^2 2^2 3^2 6^2", 202).with_denom(1)
F14 = expand_eta_quotient("1 2 7 14", 202).with_denom(1)


def lift_of(form, nmax, t=None):
    t = form.t if t is None else t
    return shimura_lift(form.meta, form.series(terms_needed(form.meta, t, nmax)), t, nmax)


def test_eta5_lift_is_level6_newform():
    res = lift_of(ETA5, 200)
    assert [res.b(n) for n in range(1, 201)] == [F6.coeff(n) for n in range(1, 201)]
    assert (res.target_weight, res.target_level, tuple(res.eps)) == (4, 6, (1, 1))
    assert res.coeffs.valuation == 1


def test_example2_lift_is_level14_newform():
    res = lift_of(EX2_F1, 200)
    assert [res.b(n) for n in range(1, 201)] == [F14.coeff(n) for n in range(1, 201)]
    assert [res.b(n) for n in range(1, 4)] == [1, -1, -2]


def test_f13_tilde_lift_segment():
    res = lift_of(F13_TILDE, 5)
    assert [res.b(n) for n in range(1, 6)] == F13_LIFT


def test_wrong_class_is_zero_and_flagged():
    res = lift_of(ETA5, 20, t=1)
    assert res.wrong_class and res.coeffs.is_zero()
    assert not lift_of(ETA5, 20).wrong_class


def test_lift_errors():
    F = ETA5.series(100)
    with pytest.raises(ValueError):
        shimura_lift(ETA5.meta, F, 4)
    with pytest.raises(ValueError):
        shimura_lift(ETA5.meta, F, 5, nmax=lift_length(F.with_denom(24), 5) + 1)


def test_precision_contract():
    F = ETA5.series(500).with_denom(24)
    res = shimura_lift(ETA5.meta, F, 5)
    assert res.precision == lift_length(F, 5)
    assert 5 * res.precision ** 2 <= F.last_numerator() < 5 * (res.precision + 1) ** 2


@given(st.lists(st.integers(-1000, 1000), min_size=200, max_size=200),
       st.lists(st.integers(-1000, 1000), min_size=200, max_size=200),
       st.integers(-9, 9), st.sampled_from([5, 29, 53]))
def test_lift_is_linear(a, b, s, t):
    meta = ETA5.meta
    A = FracSeries(a, 5, 24)
    B = FracSeries(b, 5, 24)
    lhs = shimura_lift(meta, A * s + B, t).coeffs
    rhs = shimura_lift(meta, A, t).coeffs * s + shimura_lift(meta, B, t).coeffs
    assert lhs == rhs


@pytest.mark.parametrize("form,meta_v", [
    (ETA5, HalfIntegralMeta(2, 5, RealCharacter(5, 5), 25)),
    (EX4_F1, HalfIntegralMeta(1, 143, RealCharacter(143, -143), 169)),
])
def test_v_intertwining(form, meta_v):
    t, nmax = form.t, 12
    F = form.meta.normalize(form.series(terms_needed(form.meta, t, nmax) + 5))
    G = v_operator(F, t)
    lhs = shimura_lift(meta_v, G, 1, nmax * t).coeffs
    base = shimura_lift(form.meta, F, t, nmax).coeffs
    chi = form.meta.chi_lift(t)
    for n in range(1, nmax * t + 1):
        expect = chi * base.coeff(n // t) if n % t == 0 else 0
        assert lhs.coeff(n) == expect, n


def test_classical_lift_relations():
    assert classical_shimura_lift(FracSeries.zero(200), 5, 2, RealCharacter(12, 1)).is_zero()
    for form, chi in ((ETA5, RealCharacter(12, 12)), (EX2_F1, RealCharacter(4, -4))):
        F = form.series_for_lift(60)
        b = shimura_lift(form.meta, F, form.t, 60).coeffs
        c = classical_shimura_lift(to_theta_convention(form.meta, F), form.t, form.meta.lam,
                                   theta_character(form.meta), 60)
        assert c == twist(b, chi)


@pytest.mark.parametrize("form", [ETA5, EX2_F1, EX2_F2, EX4_F1])
def test_compare_lifts_vanishes(form):
    assert compare_lifts(form.meta, form.series_for_lift(100), form.t, 100) == 0


def test_compare_lifts_zero_form():
    meta = ETA5.meta
    assert compare_lifts(meta, FracSeries.zero(3000, 5, 24), 5, 20) == 0


@pytest.mark.parametrize("form,p,n", [(ETA5, 7, 100), (EX4_F1, 5, 60), (EX2_F1, 3, 80),
                                      (F13_TILDE, 11, 12)])
def test_equivariance(form, p, n):
    F = form.series_for_lift(n, p)
    assert equivariance_check(form.meta, F, form.t, p, n)


def test_equivariance_is_formal_on_random_series():
    # the identity holds coefficientwise for any correctly supported input
    rng = np.random.default_rng(11)
    meta = ETA5.meta
    F = FracSeries([int(x) for x in rng.integers(-9, 10, terms_needed(meta, 29, 10, 5))], 5, 24)
    assert equivariance_check(meta, F, 29, 5, 10)


def test_equivariance_sign_matters():
    meta, p, n = ETA5.meta, 7, 30
    F = ETA5.series_for_lift(n, p)
    lhs = shimura_lift(meta, t_p2_eta(meta, F, p), 5).coeffs
    base = shimura_lift(meta, F, 5).coeffs
    wrong = t_p_integral(base, p, 4, RealCharacter(6, 1)) * -meta.chi_lift(p)
    assert any(lhs.coeff(k) != wrong.coeff(k) for k in range(1, n + 1))


@pytest.mark.parametrize("form,newform,p,factor", [
    (ETA5, [1, -2, -3, 4, 6], 5, -6),
    (EX2_F2, [1, -1, -2], 3, 2),
    (EX3_F1, [1, 1, -3], 3, 3),
])
def test_eigen_relation_factors(form, newform, p, factor):
    rep = eigen_relation_check(form.meta, form.series(p * p * 40), newform, [p])[p]
    assert rep.passed and rep.extra["factor"] == factor and rep.compared >= 30


def test_eigen_relation_wrong_factor_fails():
    rep = eigen_relation_check(ETA5.meta, ETA5.series(1000), [1, -2, -3, 4, 7], [5])[5]
    assert not rep.passed


@pytest.mark.parametrize("form", [ETA5, EX2_F1, EX2_F2, EX3_F1, EX4_F1, F13_TILDE])
def test_newness_relations_hold(form):
    res = lift_of(form, 200 if form is not F13_TILDE else 60)
    checks = res.newness_checks()
    assert 2 in checks and all(r.passed for r in checks.values())


@pytest.mark.parametrize("form", [ETA5, EX2_F1])
def test_multiplicative(form):
    assert is_multiplicative(lift_of(form, 200).coeffs, 200)


def test_proportionality_helper():
    b = FracSeries([0, 2, -4, -6], 0)
    assert proportionality(b.shift(0), [1, -2, -3], 3) == Fraction(2)
    assert proportionality(b, [1, -2, -4], 3) is None


def test_mod13_lift_matches_exact():
    nmax = 40
    F = F13_TILDE.series_for_lift(nmax)
    exact = shimura_lift(F13_TILDE.meta, F, 7, nmax).coeffs
    mod = shimura_lift(F13_TILDE.meta, reduce_mod(F, 13), 7, nmax).coeffs
    assert mod == reduce_mod(exact, 13)


def test_random_series_lift_matches_direct_sum():
    rng = np.random.default_rng(3)
    meta = EX2_F1.meta
    F = FracSeries([int(x) for x in rng.integers(-50, 51, 400)], meta.residue, meta.denom)
    t, nmax = 3, 20
    res = shimura_lift(meta, F, t, nmax).coeffs
    chi = meta.chi_lift
    for n in range(1, nmax + 1):
        expect = 0
        for j in range(1, n + 1):
            if n % j == 0:
                k = n // j
                expect += meta.psi(j) * kronecker(j, t) * chi(k) * F.coeff(t * k * k)
        assert res.coeff(n) == expect
