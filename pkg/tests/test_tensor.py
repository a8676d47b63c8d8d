import itertools
from fractions import Fraction
from math import comb, factorial, prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pvs53.tensor import (
    Alt2Tensor,
    DimensionMismatch,
    SymForm,
    dual4,
    eval_form,
    monomials,
    multinomial,
    power_embed,
    sym_pairing,
    sym_product,
    wedge2,
    wedge4_pair,
)
from strategies import forms, rationals, vectors

e = lambda i, n=3: SymForm.basis(n, i)  # noqa: E731
f = lambda i, n=3: SymForm.basis(n, i, dual=True)  # noqa: E731


def test_monomial_order_and_count():
    mons = monomials(3, 2)
    assert mons[0] == (2, 0, 0)
    assert len(mons) == comb(4, 2)
    assert len(monomials(5, 4)) == comb(8, 4)
    assert multinomial((2, 1, 1)) == 12


def test_products():
    assert sym_product(e(0), e(0)) == SymForm.monomial((2, 0, 0))
    assert sym_product(e(0), SymForm.one(3)) == e(0)
    s = e(1) + e(2)
    assert s * s == SymForm(3, 2, {(0, 2, 0): 1, (0, 1, 1): 2, (0, 0, 2): 1})


def test_product_variance_mismatch():
    with pytest.raises(DimensionMismatch):
        sym_product(e(0), f(0))
    with pytest.raises(DimensionMismatch):
        sym_product(e(0), e(0, 4))


def test_pairing_examples():
    assert sym_pairing(e(1) * e(1), f(1) * f(1)) == 1
    assert sym_pairing(e(1) * e(2), f(1) * f(2)) == Fraction(1, 2)
    assert sym_pairing(e(1) * e(1), f(1) * f(2)) == 0


def test_pairing_errors():
    with pytest.raises(DimensionMismatch):
        sym_pairing(e(0), e(0))
    with pytest.raises(DimensionMismatch):
        sym_pairing(e(0), f(0) * f(0))


@pytest.mark.parametrize("n,d", [(n, d) for n in range(1, 6) for d in range(1, 5)])
def test_pairing_table_exhaustive(n, d):
    mons = monomials(n, d)
    for I, J in itertools.product(mons, mons):
        got = sym_pairing(SymForm.monomial(I), SymForm.monomial(J, dual=True))
        want = Fraction(prod(factorial(i) for i in I), factorial(d)) if I == J else 0
        assert got == want


def test_power_embed_examples():
    a = e(0, 2) + e(1, 2)
    assert power_embed(a, 2) == SymForm(2, 2, {(2, 0): 1, (1, 1): 2, (0, 2): 1})
    assert power_embed(e(0), 3) == SymForm.monomial((3, 0, 0))
    assert power_embed(e(0).scale(2), 2) == SymForm.monomial((2, 0, 0), 4)


def test_eval_examples():
    g = SymForm.monomial((2, 1), dual=True)
    assert eval_form(g, [2, 3]) == 12
    assert eval_form(g, [0, 0]) == 0


@given(forms(3, 3), vectors(3))
def test_eval_is_pairing_with_power(form, a):
    # (i_d(a), f)_d = f(a): the pairing normalization and i_d fit together
    assert sym_pairing(power_embed(SymForm.linear(a), 3), form) == eval_form(form, a)


@given(forms(3, 1, False), forms(3, 2, False), forms(3, 1, False))
def test_product_associative_commutative(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@given(forms(4, 2), st.integers(0, 3))
def test_text_and_json_round_trip(form, _):
    names = ["a0", "a1", "a2", "a3"]
    assert SymForm.from_text(form.to_text(names), names, 2) == form
    assert SymForm.from_json(form.to_json()) == form


def test_from_text_rejects_wrong_degree():
    with pytest.raises(ValueError):
        SymForm.from_text("a0*a1 + a2", ["a0", "a1", "a2"], 2)


def test_wedge2_examples():
    m = lambda i: [int(k == i) for k in range(5)]  # noqa: E731
    assert wedge2(m(0), m(1)) == Alt2Tensor({(0, 1): 1})
    assert wedge2(m(1), m(0)) == Alt2Tensor({(0, 1): -1})
    s = [1, 1, 0, 0, 0]
    assert wedge2(s, s).is_zero()


@given(vectors(5), vectors(5), vectors(5), rationals)
def test_wedge2_alternating_bilinear(a, b, c, t):
    assert wedge2(a, b) == wedge2(b, a).scale(-1)
    ab = [x + t * y for x, y in zip(a, b)]
    assert wedge2(ab, c) == wedge2(a, c) + wedge2(b, c).scale(t)


def test_dual4_conventions():
    assert dual4(0).as_wedge4() == {(1, 2, 3, 4): 1}
    assert dual4(1).as_wedge4() == {(0, 2, 3, 4): -1}
    m = lambda i: [int(k == i) for k in range(5)]  # noqa: E731
    for i in range(5):
        for j in range(5):
            assert wedge4_pair(m(i), dual4(j)) == (1 if i == j else 0)
    with pytest.raises(IndexError):
        dual4(5)


@given(vectors(10))
def test_alt2_text_round_trip(coords):
    t = Alt2Tensor(coords)
    assert Alt2Tensor.from_text(t.to_text()) == t
    assert Alt2Tensor.from_json(t.to_json()) == t
