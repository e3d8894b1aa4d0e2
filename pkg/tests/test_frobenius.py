from math import gcd

import pytest

from etalift.arith import kronecker
from etalift.examples import F13_LIFT, F13_TILDE_LEAD, G6_PRINTED
from etalift.forms import cphi_series
from etalift.frobenius import (build_Fl, build_tilde_F13, classify_Q, congex_check,
                               delta_exponent, f13_decomposition_on_printed, flcong_crosscheck,
                               lift_tilde_F13, q_table, ramanujan_scan, recover_g6_mod13,
                               scan_congruence)
from etalift.qseries import reduce_mod


@pytest.fixture(scope="module")
def g6():
    return recover_g6_mod13(400)


@pytest.fixture(scope="module")
def cphi13():
    return cphi_series(5, 600001, 13)


def test_tilde_F13_leading_terms():
    F = build_tilde_F13(10)
    assert (F.valuation, F.denom) == (7, 24)
    assert [F.coeff(7 + 24 * i) for i in range(3)] == F13_TILDE_LEAD
    assert build_tilde_F13(10, 13) == reduce_mod(F, 13)
    with pytest.raises(ValueError):
        build_tilde_F13(2)


def test_delta_exponents():
    assert [delta_exponent(ell) for ell in (7, 11, 13)] == [10, 25, 35]


@pytest.mark.parametrize("ell", [7, 11])
def test_F_ell_vanishes(ell):
    F = build_Fl(ell, 100)
    assert F.precision == 100 and F.is_zero()


def test_F13_matches_tilde_form():
    F = build_Fl(13, 100)
    assert F.precision == 100
    assert F == reduce_mod(build_tilde_F13(100), 13)


def test_build_Fl_rejects_other_primes():
    with pytest.raises(ValueError):
        build_Fl(17, 10)


@pytest.mark.parametrize("ell,P", [(7, 60), (13, 500)])
def test_flcong_crosscheck(ell, P):
    rep = flcong_crosscheck(ell, P)
    assert rep.passed and rep.compared == P


def test_flcong_leading_coefficient():
    assert cphi_series(5, 5).coeff(4) % 13 == 6
    assert build_Fl(13, 3).coeff(7) == 6


def test_lift_of_tilde_form_mod13():
    b = lift_tilde_F13(5, 13).coeffs
    assert [b.coeff(n) for n in range(1, 6)] == [x % 13 for x in F13_LIFT]


def test_g6_recovery_against_printed(g6):
    assert [g6.coeff(n) for n in range(1, 6)] == [x % 13 for x in G6_PRINTED]
    assert g6.coeff(1) == 11 * 6 % 13


def test_g6_hecke_multiplicativity(g6):
    # a normalized eigenform mod 13: a(mn) = a(m) a(n) for coprime m, n
    for m in range(2, 20):
        for n in range(m + 1, 400 // m + 1):
            if gcd(m, n) == 1:
                assert g6.coeff(m * n) == g6.coeff(m) * g6.coeff(n) % 13


def test_rational_decomposition_on_printed_segment():
    ok, values = f13_decomposition_on_printed()
    assert ok and values == F13_LIFT


def test_classify_examples(g6):
    assert classify_Q(103, g6) == 1
    assert classify_Q(97, g6) == -1
    assert classify_Q(101, g6) is None
    for bad in (5, 13, 3, 100):
        with pytest.raises(ValueError):
            classify_Q(bad, g6)


def test_q_table_small_range(g6):
    rows = q_table(400, g6)
    assert rows[1] == [103, 109, 283]
    assert rows[-1] == [97, 191, 241, 251, 397]


def test_epsilon_rule(g6):
    for Q in (97, 103, 191):
        a = g6.coeff(Q)
        beta = 1 if a == pow(Q, 4, 13) else -1
        assert classify_Q(Q, g6) == beta * kronecker(-5, Q)


def test_scan_short_range(cphi13):
    good = scan_congruence(97, -1, n_max=117, cphi=cphi13)
    assert good.passed and good.n_checked > 0
    bad = scan_congruence(97, 1, n_max=117, cphi=cphi13)
    assert not bad.passed
    csv = bad.to_csv().splitlines()
    assert csv[0].startswith("ell,Q,eps_Q") and csv[1].endswith("fail")


def test_scan_needs_long_enough_series():
    with pytest.raises(ValueError):
        scan_congruence(97, -1, n_max=10 ** 6, cphi=cphi_series(5, 1000, 13))
    with pytest.raises(ValueError, match="at most"):
        scan_congruence(103, 1, n_max=2000)


def test_ramanujan_scans(cphi13):
    assert ramanujan_scan(7, 20000).passed
    assert ramanujan_scan(11, 10000).passed
    assert not ramanujan_scan(7, 2000, shift=3).passed
    with pytest.raises(ValueError):
        ramanujan_scan(13, 10)


def test_congex_progression():
    rep = congex_check(cphi=cphi_series(5, 1014213, 13))
    assert rep.consistent and rep.legendre == -1
    assert rep.arguments == [1014212] and rep.residues == [0] and rep.passed
