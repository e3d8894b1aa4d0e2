import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from etalift.arith import RealCharacter
from etalift.qseries import (FracSeries, ModSeries, PrecisionError, eta_series, euler_product,
                             invert, lift_int, power, reduce_mod, series_from_json, twist,
                             u_operator, v_operator)

PRIMES = [2, 3, 13, 998244353, 2 ** 31 - 1]
ints = st.lists(st.integers(-10 ** 12, 10 ** 12), min_size=1, max_size=90)


def naive_mul(a, b):
    n = min(len(a), len(b))
    return [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n)]


def naive_euler(P):
    c = [1] + [0] * (P - 1)
    for n in range(1, P):
        c = [c[i] - (c[i - n] if i >= n else 0) for i in range(P)]
    return c


@given(ints, ints)
def test_exact_product_matches_schoolbook(a, b):
    assert list((FracSeries(a) * FracSeries(b)).coeffs) == naive_mul(a, b)


@given(ints, ints, st.sampled_from(PRIMES))
def test_modular_product_matches_reduced_exact(a, b, M):
    got = ModSeries([x % M for x in a], M) * ModSeries([x % M for x in b], M)
    assert got.coeffs.tolist() == [x % M for x in naive_mul(a, b)]


def test_long_modular_product_uses_fast_path():
    rng = np.random.default_rng(1)
    M = 2 ** 31 - 1
    a = [int(x) for x in rng.integers(0, 2 ** 40, 700)]
    b = [int(x) for x in rng.integers(0, 2 ** 40, 700)]
    got = (ModSeries([x % M for x in a], M) * ModSeries([x % M for x in b], M)).coeffs.tolist()
    assert got == [x % M for x in naive_mul(a, b)]


@given(st.sampled_from([1, -1]), ints)
def test_inverse_of_unit_series(c0, a):
    a = [c0] + a
    A = FracSeries(a)
    assert list((A * invert(A)).coeffs) == [1] + [0] * (len(a) - 1)


@given(st.lists(st.integers(0, 12), min_size=1, max_size=60).filter(lambda a: a[0] != 0))
def test_inverse_mod_prime(a):
    A = ModSeries(a, 13)
    assert (A * invert(A)).coeffs.tolist() == [1] + [0] * (len(a) - 1)


def test_fractional_inverse():
    A = FracSeries([2, 1])
    assert list(invert(A).coeffs) == [Fraction(1, 2), Fraction(-1, 4)]


def test_power_and_negative_power():
    E = euler_product(50)
    assert list(power(E, 3).coeffs) == naive_mul(naive_mul(naive_euler(50), naive_euler(50)), naive_euler(50))
    assert list((power(E, -2) * power(E, 2)).coeffs) == [1] + [0] * 49


def test_euler_product_against_naive():
    assert list(euler_product(120).coeffs) == naive_euler(120)
    assert euler_product(120, 7).coeffs.tolist() == [x % 7 for x in naive_euler(120)]


def test_eta_series_shape():
    e = eta_series(10)
    assert (e.valuation, e.denom) == (1, 24)
    assert e.coeff(1) == 1 and e.coeff(25) == -1 and e.coeff(49) == -1 and e.coeff(2) == 0


def test_mixed_denominators_align():
    a = FracSeries([1, 0, 1], 0, 8)  # 1 + q^2 over 1/8 steps
    b = FracSeries([1, 2, 3], 0, 1)
    s = a + b
    assert s.denom == 8 and s.coeff(0) == 2 and s.coeff(8) == 2 and s.coeff(16) == 4
    with pytest.raises(ValueError):
        FracSeries([1], 0, 8) + FracSeries([1], 0, 24)
    with pytest.raises(ValueError):
        FracSeries([1], 0, 2)


def test_precision_error_past_the_end():
    with pytest.raises(PrecisionError):
        FracSeries([1, 2, 3]).coeff(3)
    with pytest.raises(PrecisionError):
        ModSeries([1, 2], 5).coeff(2)


def test_u_and_v_operators():
    A = FracSeries(list(range(1, 31)))
    assert list(u_operator(A, 3).coeffs) == list(range(1, 31, 3))
    assert u_operator(v_operator(A, 4), 4).coeffs == A.coeffs
    V = v_operator(A, 2)
    assert V.coeff(4) == 3 and V.coeff(5) == 0


def test_u_operator_on_fractional_exponents():
    F = eta_series(60) ** 5  # numerators 5 mod 24
    U = u_operator(F, 5)
    for n in range(U.valuation, U.last_numerator() + 1, 24):
        assert U.coeff(n) == F.coeff(5 * n)


def test_twist_by_character():
    A = FracSeries([1] * 20)
    chi = RealCharacter.legendre(5)
    assert list(twist(A, chi).coeffs) == [chi(n) for n in range(20)]
    M = ModSeries([1] * 20, 7)
    assert twist(M, chi).coeffs.tolist() == [chi(n) % 7 for n in range(20)]
    with pytest.raises(ValueError):
        twist(eta_series(5), chi)


def test_reduce_and_lift():
    A = FracSeries([5, -3, 17, Fraction(1, 2)])
    R = reduce_mod(A, 7)
    assert R.coeffs.tolist() == [5, 4, 3, 4]
    assert list(lift_int(ModSeries([1, -1], 7)).coeffs) == [1, 6]


@pytest.mark.parametrize("series", [
    FracSeries([1, Fraction(-2, 3), 5], 5, 24),
    ModSeries([1, 2, 12], 13, 7, 8),
])
def test_json_roundtrip(series):
    back = series_from_json(json.loads(json.dumps(series.to_json())))
    assert back == series and type(back) is type(series)
