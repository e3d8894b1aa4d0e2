from math import gcd

import pytest
from hypothesis import given, strategies as st

from etalift.arith import RealCharacter, Root24
from etalift.forms import theta_series
from etalift.multipliers import (IDENTITY, ConvergenceError, GL2Int, check_eta_to_theta,
                                 check_nu_v_t, make_rng, nu_eta, nu_theta, psi_prime,
                                 random_gamma0, theta_mult_power_identity,
                                 verify_transform_numeric)
from etalift.qseries import FracSeries, eta_series

ETA = eta_series(3000)
THETA = theta_series(3000)
S = GL2Int(0, -1, 1, 0)
T = GL2Int(1, 1, 0, 1)


@st.composite
def gamma0(draw, N=1, cmax=60):
    c = N * draw(st.integers(-cmax, cmax))
    d = draw(st.integers(-300, 300).filter(lambda d: gcd(d, c) == 1))
    if c == 0:
        d = draw(st.sampled_from([1, -1]))
        return GL2Int(d, draw(st.integers(-50, 50)), 0, d)
    a = pow(d, -1, abs(c)) if abs(c) > 1 else 1
    a += abs(c) * draw(st.integers(-3, 3))
    return GL2Int(a, (a * d - 1) // c, c, d)


def test_nu_eta_examples():
    assert nu_eta(T) == Root24(1)
    assert nu_eta(S) == Root24(-3)
    assert nu_eta(IDENTITY) == Root24(0)
    with pytest.raises(ValueError):
        nu_eta(GL2Int(2, 0, 0, 1))


def test_nu_theta_examples():
    assert nu_theta(IDENTITY) == Root24(0)
    assert nu_theta(GL2Int(1, 0, 4, 1)) == Root24(0)
    assert nu_theta(GL2Int(3, 1, 8, 3)) == Root24(6)
    with pytest.raises(ValueError):
        nu_theta(GL2Int(1, 0, 2, 1))


@given(gamma0())
def test_nu_eta_is_24th_root_and_sign_rule(g):
    assert nu_eta(g) ** 24 == Root24(0)
    # nu(-g) = i nu(g) for g with c > 0 (and for translations)
    pos = g if g.c > 0 or (g.c == 0 and g.d == 1) else -g
    assert nu_eta(-pos) == Root24(6) * nu_eta(pos)


@given(gamma0(4))
def test_nu_theta_is_fourth_root(g):
    assert nu_theta(g) ** 4 == Root24(0)


@given(gamma0(4), st.sampled_from([1, 3, 5, 7, 9]), st.integers(0, 6))
def test_theta_power_parity_identity(g, r, lam):
    if (2 * lam + 1 - r) % 4 == 0 or (2 * lam + 1 + r) % 4 == 0:
        assert theta_mult_power_identity(r, lam, g)


@pytest.mark.parametrize("series,weight,g,mult", [
    (ETA, 0.5, T, Root24(1)),
    (ETA, 0.5, S, Root24(-3)),
    (THETA, 0.5, GL2Int(1, 0, 4, 1), Root24(0)),
    (THETA, 0.5, GL2Int(3, 1, 8, 3), Root24(6)),
])
def test_numeric_transform_examples(series, weight, g, mult):
    assert verify_transform_numeric(series, weight, g, mult) < 1e-10


@pytest.mark.parametrize("r", [1, 3, 5])
def test_numeric_transform_eta_powers(r):
    rng = make_rng(r)
    F = eta_series(3000) ** r
    for _ in range(25):
        g = random_gamma0(1, rng, kmax=50, dmax=50)
        assert verify_transform_numeric(F, r / 2, g, nu_eta(g) ** r) < 1e-9


def test_numeric_transform_theta_random():
    rng = make_rng(7)
    for _ in range(25):
        g = random_gamma0(4, rng, kmax=12, dmax=50)
        assert verify_transform_numeric(THETA, 0.5, g, nu_theta(g)) < 1e-9


def test_wrong_multiplier_is_detected():
    g = GL2Int(2, -1, 3, -1)
    right = nu_eta(g)
    assert verify_transform_numeric(ETA, 0.5, g, right) < 1e-9
    assert verify_transform_numeric(ETA, 0.5, g, right * Root24(1)) > 1e-3


def test_numeric_rejects_negative_c_and_short_series():
    with pytest.raises(ValueError):
        verify_transform_numeric(ETA, 0.5, GL2Int(1, 0, -1, 1), Root24(0))
    short = FracSeries([1, 1, 1, 1])
    with pytest.raises(ConvergenceError):
        verify_transform_numeric(short, 1, GL2Int(1, 0, 40, 1), Root24(0), z0=complex(0, 0.001))


@pytest.mark.parametrize("r,t", [(1, 5), (9, 7), (13, 11), (3, 3), (5, 1)])
def test_nu_v_t_exact(r, t):
    rng = make_rng(r * 100 + t)
    for _ in range(300):
        assert check_nu_v_t(random_gamma0(t, rng), r, t)
    assert check_nu_v_t(IDENTITY, r, t)


def test_nu_v_t_errors():
    with pytest.raises(ValueError):
        check_nu_v_t(GL2Int(1, 0, 5, 1), 2, 5)
    with pytest.raises(ValueError):
        check_nu_v_t(GL2Int(1, 0, 5, 1), 1, 3)
    with pytest.raises(ValueError):
        check_nu_v_t(GL2Int(1, 0, 3, 1), 3, 3 * 5)


def test_psi_prime_shapes():
    assert psi_prime(5, 2).modulus == 12
    assert psi_prime(9, 1, RealCharacter(7, -7)).modulus == 28


@pytest.mark.parametrize("r,lam,N", [(5, 2, 576), (1, 0, 576), (9, 1, 64), (3, 1, 64)])
def test_eta_to_theta(r, lam, N):
    rng = make_rng(r)
    for _ in range(6):
        g = random_gamma0(N, rng, kmax=3 if N == 576 else 10)
        assert check_eta_to_theta(r, lam, g)


def test_eta_to_theta_translation_and_errors():
    assert check_eta_to_theta(1, 0, T)
    with pytest.raises(ValueError):
        check_eta_to_theta(5, 2, GL2Int(1, 0, 64, 1))
    with pytest.raises(ValueError):
        check_eta_to_theta(4, 2, T)
