import pytest

from etalift.examples import EXAMPLE1_THETA, EXAMPLES, verify_example
from etalift.forms import expand_eta_quotient
from etalift.lift import proportionality, shimura_lift


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_verify_example_all_checks_pass(n):
    lines = verify_example(n, nmax=120, hecke_terms=30)
    failed = [line for line in lines if not line.passed]
    assert not failed, failed
    assert len(lines) >= 8


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_every_form_lives_in_a_nonzero_space(n):
    for form in EXAMPLES[n].forms:
        assert not form.meta.is_trivial_space
        assert form.t % form.meta.denom == form.meta.residue


def test_printed_expansions():
    assert [expand_eta_quotient("1^5", 5).coeff(5 + 24 * i) for i in range(5)] == [1, -5, 5, 10, -15]
    f = expand_eta_quotient("1^2 2^2 3^2 6^2", 8)
    assert [f.coeff(n) for n in range(1, 7)] == EXAMPLES[1].newform
    g = expand_eta_quotient("1 2 7 14", 9)
    assert [g.coeff(n) for n in range(1, 8)] == EXAMPLES[2].newform
    spec, printed = EXAMPLE1_THETA
    G = expand_eta_quotient(spec, 10)
    assert [G.coeff(n) for n in range(1, 10)] == printed


@pytest.mark.parametrize("n", [3, 4])
def test_lift_normalization_reproduces_printed_newform(n):
    ex = EXAMPLES[n]
    for form in ex.forms:
        b = shimura_lift(form.meta, form.series_for_lift(7), form.t, 7).coeffs
        assert proportionality(b, ex.newform, 7) is not None


def test_unknown_example():
    with pytest.raises(KeyError):
        verify_example(5)
