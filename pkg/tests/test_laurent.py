import pytest
from hypothesis import given, strategies as st

from vdelta.laurent import A, LaurentPolynomial as L

polys = st.dictionaries(st.integers(-12, 12), st.integers(-5, 5), max_size=6).map(L)


def test_zero_coefficients_dropped():
    p = L({2: 0, 3: 1})
    assert p.terms == {3: 1}
    assert L({1: 1}) - L({1: 1}) == 0


def test_text_form():
    p = -(A ** 10) + A**6 + A**4
    assert str(p) == "-A^10+A^6+A^4"
    assert str(L.constant(1)) == "1"
    assert str(L({-3: 2, 0: -1})) == "-1+2*A^-3"
    assert str(L()) == "0"


def test_negative_power_of_monomial():
    assert (-(A**3)) ** -2 == A ** -6
    with pytest.raises(ValueError):
        (A + 1) ** -1
    with pytest.raises(ValueError):
        L.monomial(1, 2) ** -1


def test_degrees():
    p = L({-4: 1, 7: -2})
    assert p.max_degree() == 7 and p.min_degree() == -4
    with pytest.raises(ValueError):
        L().max_degree()


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == 0


@given(polys)
def test_text_and_json_round_trip(p):
    assert L.parse(str(p)) == p
    assert L.from_json(p.to_json()) == p


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        L.parse("A^^2")
