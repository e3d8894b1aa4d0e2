from math import gcd

import pytest
from hypothesis import given, strategies as st

from etalift.arith import (CHI12, RealCharacter, Root24, atkin_lehner_signs, epsilon_d,
                           hasse_exponent, is_prime, is_squarefree, is_suitable_numeric,
                           jacobi, kronecker, multiplicative_order, primes_up_to)


def legendre_euler(a, p):
    """(a/p) for an odd prime p by Euler's criterion."""
    x = pow(a % p, (p - 1) // 2, p)
    return -1 if x == p - 1 else x


def odd_primes(n):
    return [p for p in range(3, n) if all(p % q for q in range(2, int(p ** 0.5) + 1))]


def test_jacobi_matches_euler_criterion_on_primes():
    for p in odd_primes(200):
        for a in range(-50, 150):
            assert jacobi(a, p) == legendre_euler(a, p)


def test_kronecker_multiplicative_in_odd_denominator():
    for a in range(-40, 201, 3):
        for b1 in range(1, 60, 2):
            for b2 in range(1, 60, 2):
                assert kronecker(a, b1 * b2) == kronecker(a, b1) * kronecker(a, b2)


@given(st.integers(-10 ** 6, 10 ** 6), st.integers(1, 5000))
def test_kronecker_periodic_mod_4b(a, b):
    assert kronecker(a, b) == kronecker(a + 4 * b, b)


@given(st.integers(-10 ** 4, 10 ** 4), st.integers(-10 ** 4, 10 ** 4))
def test_kronecker_zero_iff_common_factor(a, b):
    assert (kronecker(a, b) == 0) == (gcd(a, b) != 1)


def test_kronecker_edge_conventions():
    assert kronecker(1, 0) == 1 and kronecker(-1, 0) == 1 and kronecker(2, 0) == 0
    assert kronecker(-3, -1) == -1 and kronecker(3, -1) == 1
    assert kronecker(5, 2) == -1 and kronecker(7, 2) == 1 and kronecker(12, 5) == -1


@pytest.mark.parametrize("chi", [RealCharacter(1, 1), RealCharacter.legendre(5),
                                 RealCharacter.legendre(7), RealCharacter.legendre(11),
                                 RealCharacter.legendre(13), CHI12, RealCharacter(4, -4),
                                 RealCharacter(24, 8)])
def test_character_values(chi):
    N = chi.modulus
    for n in range(-4 * N, 4 * N + 1):
        v = chi(n)
        assert v * v in (0, 1)
        assert (v == 0) == (gcd(n, N) != 1)
        assert chi(n + N) == v
    vals = chi.values(3 * N)
    assert vals.tolist() == [chi(n) for n in range(3 * N + 1)]


def test_character_constructors():
    assert RealCharacter.legendre(7).kernel == -7
    assert RealCharacter.parse("(./13)").kernel == 13
    assert RealCharacter.parse("(12/.)").modulus == 12
    assert RealCharacter.parse("1").label() == "1 mod 1"
    with pytest.raises(ValueError):
        RealCharacter(3, 5)
    with pytest.raises(ValueError):
        RealCharacter(5, 2)
    assert (RealCharacter.legendre(5) * CHI12).modulus == 60


def test_root24_group_laws():
    for k in range(24):
        x = Root24(k)
        assert x ** 24 == Root24(0)
        assert x * x.inverse() == Root24(0)
        assert -x == x * -1
    assert Root24(5) * Root24(20) == Root24(1)
    assert abs(Root24(6).value() - 1j) < 1e-15


def test_epsilon_square_is_minus_one_symbol():
    for d in range(-999, 1000, 2):
        assert epsilon_d(d) ** 2 == Root24.from_sign(kronecker(-1, d))
        assert Root24(3 * (1 - d)) == Root24.from_sign(kronecker(2, d)) * epsilon_d(d)
    with pytest.raises(ValueError):
        epsilon_d(4)


@pytest.mark.parametrize("r,psi,expected", [
    (5, RealCharacter(1, 1), (1, 1)),
    (7, RealCharacter.legendre(5), (1, -1)),
    (9, RealCharacter.legendre(7), (1, None)),
])
def test_atkin_lehner_signs(r, psi, expected):
    eps = atkin_lehner_signs(r, psi)
    assert tuple(eps) == expected
    assert eps.eps2 ** 2 == 1


def test_atkin_lehner_rejects_even_r():
    with pytest.raises(ValueError):
        atkin_lehner_signs(4, RealCharacter(1, 1))


def test_primes_and_squarefree():
    assert primes_up_to(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert [n for n in range(1, 200) if is_prime(n)] == primes_up_to(199).tolist()
    assert is_prime(998244353) and not is_prime(998244353 * 3)
    assert [n for n in range(1, 20) if is_squarefree(n)] == [1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19]
    assert multiplicative_order(2, 13) == 12 and multiplicative_order(2, 7) == 3


@pytest.mark.parametrize("k,ell,expected", [(6, 5, False), (4, 17, True)])
def test_suitability_examples(k, ell, expected):
    assert is_suitable_numeric(k, ell) is expected


def test_suitability_large_primes():
    # l > 10 lam - 4 leaves only the power-of-two condition
    for lam in range(1, 11):
        for ell in primes_up_to(200).tolist():
            if ell > 10 * lam - 4 and ell >= 5:
                pw = pow(2, 2 * lam - 1, ell)
                if pw not in (2, pow(2, -1, ell)):
                    assert is_suitable_numeric(2 * lam, ell)


def test_suitability_bad_input():
    with pytest.raises(ValueError):
        is_suitable_numeric(3, 7)
    with pytest.raises(ValueError):
        is_suitable_numeric(4, 9)


def hasse_brute(ell):
    x = 1
    for a in range(1, 2 * ell + 2):
        x = x * 2 % ell
        if x == ell - 2:
            return a
    return None


def test_hasse_exponent_examples_and_brute_force():
    assert hasse_exponent(5) == 3
    assert hasse_exponent(7) is None
    assert hasse_exponent(13) == 7
    for ell in primes_up_to(3000).tolist():
        if ell >= 5:
            assert hasse_exponent(ell) == hasse_brute(ell)
