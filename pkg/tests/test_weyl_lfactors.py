from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bks.exact_algebra import symbol
from bks.weyl_lfactors import (
    EmptyMinSet,
    L,
    LFactorAtom,
    WeylCosetDatum,
    a_w,
    a_w0_closed_form,
    c_w,
    d_factor,
    enumerate_cosets,
    fourier_multiplier,
    gk_product,
    long_element,
    mu,
    mu_consumers,
    reflect_symbol,
)


def test_coset_count():
    for n in range(1, 7):
        assert len(enumerate_cosets(n)) == 2 ** n


def test_coset_datum_validation():
    with pytest.raises(ValueError):
        WeylCosetDatum(3, (2, 1))
    with pytest.raises(ValueError):
        WeylCosetDatum(3, (4,))
    w = WeylCosetDatum(5, (2, 4))
    assert w.k == 2 and w.J == (1, 3, 5) and w.i(2) == 4 and w.j(3) == 5


def test_mu_examples():
    assert mu(WeylCosetDatum(2, (1,)), 1) == 2
    assert mu(WeylCosetDatum(4, (1, 2)), 1) == 3
    with pytest.raises(EmptyMinSet):
        mu(WeylCosetDatum(2, (2,)), 1)


def test_mu_is_defined_wherever_it_is_used():
    counts = [len(mu_consumers(n)) for n in range(1, 9)]
    assert counts == [0, 2, 4, 16, 32, 96, 192, 512]


def test_lfactor_strings():
    assert str(a_w(WeylCosetDatum(2, (1,)))) == "L(s+1/2,chi) * L(2s,chi^2)"
    assert str(LFactorAtom(-2, Fraction(1, 2))) == "L(-2s+1/2,chibar^2)"
    assert str(L(1, 1) / L(1, 2)) == "L(s+1,chi) / L(s+2,chi)"


def test_atom_symbol_is_geometric():
    # L(s + a, chi) = 1/(1 - chi(p) q^-(s+a)), with U = chi(p) q^(-s-(n+1)/2)
    n = 3
    atom = LFactorAtom(1, Fraction(1, 2))
    assert atom.symbol(n) == 1 / (1 - symbol("q*q_half*U"))


@pytest.mark.parametrize("n", range(1, 7))
def test_basic_cases(n):
    d = d_factor(n).symbol(n)
    assert a_w(WeylCosetDatum(n, ())).symbol(n) == d
    assert c_w(WeylCosetDatum(n, ())) == 1
    assert a_w(long_element(n)).symbol(n) == a_w0_closed_form(n).symbol(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_gindikin_karpelevich(n):
    assert gk_product(n) == c_w(long_element(n))


def test_rank_one_c_w():
    assert str(c_w(WeylCosetDatum(1, (1,)))) == "(1-U)/(1-q*U)"


@pytest.mark.parametrize("n", range(1, 7))
def test_multiplier_is_d_over_reflected_d(n):
    d = d_factor(n).symbol(n)
    m = fourier_multiplier(n)
    assert m == d / reflect_symbol(d, n)
    assert m * reflect_symbol(m, n) == 1


@pytest.mark.parametrize("n", range(1, 7))
def test_multiplier_floor(n):
    assert fourier_multiplier(n).floor == -(1 + 2 * (n // 2))


@given(st.integers(1, 6), st.data())
def test_reflection_is_an_involution(n, data):
    e = data.draw(st.sampled_from([-2, -1, 1, 2]))
    a = Fraction(data.draw(st.integers(-8, 8)), 2)
    atom = LFactorAtom(e, a)
    assert atom.reflect().reflect() == atom
    assert reflect_symbol(atom.symbol(n), n) == atom.reflect().symbol(n)


@given(st.integers(1, 6), st.data())
def test_c_w_is_regular_at_zero(n, data):
    w = data.draw(st.sampled_from(enumerate_cosets(n)))
    c = c_w(w)
    assert c.floor == 0
    assert c.evaluate(3, U=0) == pytest.approx(1)
